#pragma once

#include <utility>
#include <vector>

namespace urbanhuro {

using RegionId = int;
using Slot = int;

constexpr Slot kNeverVisited = -1;

struct RegionAttr {
  int region_type = 0;
  bool accessible = true;
  double speed_multiplier = 1.0;  // in (0, 1]
};

// Rectangular lattice of regions with 8-connectivity. Region ids are
// row-major: id = y * width + x. Carries the shared last-visit table
// that all sensing bookkeeping reads from.
class GridMap {
 public:
  GridMap(int width, int height, double cell_size_km = 0.05,
          int slots_per_cell = 1);

  int width() const { return width_; }
  int height() const { return height_; }
  int region_count() const { return width_ * height_; }
  double cell_size_km() const { return cell_size_km_; }
  int slots_per_cell() const { return slots_per_cell_; }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }
  bool valid(RegionId g) const { return g >= 0 && g < region_count(); }
  RegionId region_at(int x, int y) const { return y * width_ + x; }
  int x_of(RegionId g) const { return g % width_; }
  int y_of(RegionId g) const { return g / width_; }

  RegionAttr& attr(RegionId g) { return attrs_[static_cast<size_t>(g)]; }
  const RegionAttr& attr(RegionId g) const { return attrs_[static_cast<size_t>(g)]; }
  bool accessible(RegionId g) const { return valid(g) && attr(g).accessible; }

  // Geometric center of the region, in km from the map origin.
  std::pair<double, double> center_km(RegionId g) const {
    return {(x_of(g) + 0.5) * cell_size_km_, (y_of(g) + 0.5) * cell_size_km_};
  }

  Slot last_visit(RegionId g) const { return last_visit_[static_cast<size_t>(g)]; }
  void record_visit(RegionId g, Slot t) { last_visit_[static_cast<size_t>(g)] = t; }
  void reset_visits() { last_visit_.assign(last_visit_.size(), kNeverVisited); }

  // Stale = never sensed, or sensed more than `window` slots ago.
  bool stale(RegionId g, Slot now, int window) const {
    const Slot v = last_visit(g);
    return v == kNeverVisited || now - v > window;
  }

 private:
  int width_;
  int height_;
  double cell_size_km_;
  int slots_per_cell_;
  std::vector<RegionAttr> attrs_;
  std::vector<Slot> last_visit_;
};

// In-bounds accessible regions at Chebyshev distance 1, in row-major order.
// Throws DomainError on an invalid id.
std::vector<RegionId> neighbors8(const GridMap& map, RegionId g);

int chebyshev(const GridMap& map, RegionId a, RegionId b);

// Cells entered along the greedy diagonal path from a to b (a excluded,
// b included). Purely geometric; ignores accessibility of interior cells.
std::vector<RegionId> greedy_diagonal_path(const GridMap& map, RegionId a,
                                           RegionId b);

// Traversal slots from a to b: Chebyshev distance times slots-per-cell,
// divided by the minimum speed multiplier seen along the greedy diagonal
// path, rounded up. Throws DomainError if either endpoint is inaccessible.
Slot travel_time(const GridMap& map, RegionId a, RegionId b);

// One movement step along the fastest route toward `target`: the accessible
// neighbor minimizing travel_time to the target (current region if nothing
// improves). Ties break on the lower region id.
RegionId fastest_step(const GridMap& map, RegionId from, RegionId target);

}  // namespace urbanhuro
