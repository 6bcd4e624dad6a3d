#include "urbanhuro/encoding.hpp"

#include <algorithm>
#include <cmath>

#include "urbanhuro/errors.hpp"

namespace urbanhuro {

namespace {

double norm_x(const EncodingConfig& cfg, int x) {
  return cfg.grid_width > 1 ? static_cast<double>(x) / (cfg.grid_width - 1) : 0.0;
}

double norm_y(const EncodingConfig& cfg, int y) {
  return cfg.grid_height > 1 ? static_cast<double>(y) / (cfg.grid_height - 1) : 0.0;
}

}  // namespace

int encoded_length(const EncodingConfig& cfg) {
  return 5 + 6 * cfg.capacity + 3 + cfg.n_region_types + 1;
}

int fresh_neighbor_count(const GridMap& map, RegionId g, Slot t, int window) {
  int count = 0;
  for (const RegionId n : neighbors8(map, g))
    if (!map.stale(n, t, window)) ++count;
  return count;
}

AgentStateVector encode_state_at(const Agent& agent, RegionId location,
                                 const OrderTable& orders, const GridMap& map,
                                 Slot t, const EncodingConfig& cfg) {
  if (!map.valid(location)) throw DomainError("encode_state: invalid location");
  AgentStateVector s;
  s.v.reserve(static_cast<size_t>(encoded_length(cfg)));

  // Agent-specific block.
  s.v.push_back(cfg.horizon > 0 ? std::min(1.0, static_cast<double>(t) / cfg.horizon) : 0.0);
  s.v.push_back(norm_x(cfg, map.x_of(location)));
  s.v.push_back(norm_y(cfg, map.y_of(location)));
  s.v.push_back(agent.available ? 1.0 : 0.0);
  s.v.push_back(agent.is_rv() ? 1.0 : 0.0);

  // Order block: assigned orders sorted by (deadline, id), zero-padded.
  std::vector<const Order*> assigned;
  assigned.reserve(agent.assigned_orders.size());
  for (const int oid : agent.assigned_orders) assigned.push_back(&orders.at(oid));
  std::sort(assigned.begin(), assigned.end(), [](const Order* a, const Order* b) {
    if (a->deadline != b->deadline) return a->deadline < b->deadline;
    return a->id < b->id;
  });
  for (int slot = 0; slot < cfg.capacity; ++slot) {
    if (slot < static_cast<int>(assigned.size())) {
      const Order& o = *assigned[static_cast<size_t>(slot)];
      s.v.push_back(norm_x(cfg, map.x_of(o.pickup)));
      s.v.push_back(norm_y(cfg, map.y_of(o.pickup)));
      s.v.push_back(norm_x(cfg, map.x_of(o.dropoff)));
      s.v.push_back(norm_y(cfg, map.y_of(o.dropoff)));
      const double ddl = cfg.horizon > 0
          ? static_cast<double>(o.deadline - t) / cfg.horizon : 0.0;
      s.v.push_back(std::clamp(ddl, -1.0, 1.0));
      s.v.push_back(cfg.max_fee > 0.0 ? std::min(1.0, o.fee / cfg.max_fee) : 0.0);
    } else {
      for (int k = 0; k < 6; ++k) s.v.push_back(0.0);
    }
  }

  // Sensing block.
  if (agent.last_sensed.has_value()) {
    s.v.push_back(norm_x(cfg, map.x_of(*agent.last_sensed)));
    s.v.push_back(norm_y(cfg, map.y_of(*agent.last_sensed)));
  } else {
    s.v.push_back(0.0);
    s.v.push_back(0.0);
  }
  s.v.push_back(fresh_neighbor_count(map, location, t, cfg.staleness_window) / 8.0);
  const int type = map.attr(location).region_type;
  for (int k = 0; k < cfg.n_region_types; ++k)
    s.v.push_back(k == type ? 1.0 : 0.0);
  s.v.push_back(map.attr(location).accessible ? 1.0 : 0.0);
  return s;
}

AgentStateVector encode_state(const Agent& agent, const OrderTable& orders,
                              const GridMap& map, Slot t,
                              const EncodingConfig& cfg) {
  return encode_state_at(agent, agent.location, orders, map, t, cfg);
}

}  // namespace urbanhuro
