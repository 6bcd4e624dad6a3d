#pragma once

#include <array>
#include <optional>
#include <utility>

#include "urbanhuro/grid.hpp"

namespace urbanhuro {

// Routing action space: 8 directions in row-major neighbor order, then hold.
constexpr int kNumActions = 9;
constexpr int kHoldAction = 8;

constexpr std::array<std::pair<int, int>, 8> kActionOffsets = {{
    {-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1},
}};

// Destination region of an action, or nullopt when it leaves the map or
// enters an inaccessible region. Hold always maps to the current region.
inline std::optional<RegionId> apply_action(const GridMap& map, RegionId g,
                                            int action) {
  if (action == kHoldAction) return g;
  const auto [dx, dy] = kActionOffsets[static_cast<size_t>(action)];
  const int x = map.x_of(g) + dx, y = map.y_of(g) + dy;
  if (!map.in_bounds(x, y)) return std::nullopt;
  const RegionId n = map.region_at(x, y);
  if (!map.attr(n).accessible) return std::nullopt;
  return n;
}

inline std::array<bool, kNumActions> feasible_actions(const GridMap& map,
                                                      RegionId g) {
  std::array<bool, kNumActions> mask{};
  for (int a = 0; a < kNumActions; ++a) mask[static_cast<size_t>(a)] = apply_action(map, g, a).has_value();
  return mask;
}

// Action index realizing the move from one region to an adjacent one
// (or the same region); -1 if the regions are not within one step.
inline int action_between(const GridMap& map, RegionId from, RegionId to) {
  if (from == to) return kHoldAction;
  const int dx = map.x_of(to) - map.x_of(from);
  const int dy = map.y_of(to) - map.y_of(from);
  for (int a = 0; a < 8; ++a)
    if (kActionOffsets[static_cast<size_t>(a)] == std::pair<int, int>{dx, dy}) return a;
  return -1;
}

}  // namespace urbanhuro
