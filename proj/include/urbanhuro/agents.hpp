#pragma once

#include <optional>
#include <vector>

#include "urbanhuro/grid.hpp"

namespace urbanhuro {

enum class AgentKind { Courier, Rv };

struct Agent {
  int id = -1;
  AgentKind kind = AgentKind::Courier;
  RegionId location = 0;
  bool available = true;
  std::vector<int> assigned_orders;  // ascending order id, size <= capacity
  std::optional<RegionId> last_sensed;
  int neigh_count = 0;  // adjacent regions sensed within the trailing hour
  Slot move_cooldown = 0;

  bool is_rv() const { return kind == AgentKind::Rv; }
  int load() const { return static_cast<int>(assigned_orders.size()); }
};

}  // namespace urbanhuro
