#include "urbanhuro/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "urbanhuro/errors.hpp"

namespace urbanhuro {

GridMap::GridMap(int width, int height, double cell_size_km, int slots_per_cell)
    : width_(width),
      height_(height),
      cell_size_km_(cell_size_km),
      slots_per_cell_(slots_per_cell) {
  if (width < 1 || height < 1) throw DomainError("grid dimensions must be >= 1");
  if (cell_size_km <= 0.0) throw DomainError("cell_size_km must be positive");
  if (slots_per_cell < 1) throw DomainError("slots_per_cell must be >= 1");
  attrs_.resize(static_cast<size_t>(width) * height);
  last_visit_.assign(attrs_.size(), kNeverVisited);
}

std::vector<RegionId> neighbors8(const GridMap& map, RegionId g) {
  if (!map.valid(g)) throw DomainError("invalid region id " + std::to_string(g));
  std::vector<RegionId> out;
  out.reserve(8);
  const int x = map.x_of(g), y = map.y_of(g);
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (!map.in_bounds(x + dx, y + dy)) continue;
      const RegionId n = map.region_at(x + dx, y + dy);
      if (map.attr(n).accessible) out.push_back(n);
    }
  }
  return out;
}

int chebyshev(const GridMap& map, RegionId a, RegionId b) {
  return std::max(std::abs(map.x_of(a) - map.x_of(b)),
                  std::abs(map.y_of(a) - map.y_of(b)));
}

std::vector<RegionId> greedy_diagonal_path(const GridMap& map, RegionId a,
                                           RegionId b) {
  std::vector<RegionId> path;
  int x = map.x_of(a), y = map.y_of(a);
  const int bx = map.x_of(b), by = map.y_of(b);
  while (x != bx || y != by) {
    x += (bx > x) - (bx < x);
    y += (by > y) - (by < y);
    path.push_back(map.region_at(x, y));
  }
  return path;
}

Slot travel_time(const GridMap& map, RegionId a, RegionId b) {
  if (!map.valid(a) || !map.valid(b))
    throw DomainError("travel_time: invalid region id");
  if (!map.attr(a).accessible || !map.attr(b).accessible)
    throw DomainError("travel_time: inaccessible endpoint");
  if (a == b) return 0;
  double min_mult = map.attr(a).speed_multiplier;
  for (const RegionId g : greedy_diagonal_path(map, a, b))
    min_mult = std::min(min_mult, map.attr(g).speed_multiplier);
  const double slots = chebyshev(map, a, b) * map.slots_per_cell() / min_mult;
  return static_cast<Slot>(std::ceil(slots - 1e-12));
}

RegionId fastest_step(const GridMap& map, RegionId from, RegionId target) {
  if (from == target) return from;
  RegionId best = from;
  Slot best_time = travel_time(map, from, target);
  for (const RegionId n : neighbors8(map, from)) {
    const Slot t = travel_time(map, n, target);
    if (t < best_time || (t == best_time && n < best)) {
      best = n;
      best_time = t;
    }
  }
  return best;
}

}  // namespace urbanhuro
