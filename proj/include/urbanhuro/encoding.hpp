#pragma once

#include <vector>

#include "urbanhuro/agents.hpp"
#include "urbanhuro/grid.hpp"
#include "urbanhuro/orders.hpp"

namespace urbanhuro {

// Normalization constants for the state encoding. These are part of the run
// configuration and get echoed into every report.
struct EncodingConfig {
  int grid_width = 1;
  int grid_height = 1;
  double max_fee = 20.0;
  Slot horizon = 720;
  int capacity = 3;          // order slots in the encoding
  int n_region_types = 1;    // width of the region-type one-hot
  int staleness_window = 60;
};

struct AgentStateVector {
  std::vector<double> v;
  size_t size() const { return v.size(); }
  double operator[](size_t i) const { return v[i]; }
};

// Layout: [t, x, y, avail, type] ++ capacity x [pickup_xy, dropoff_xy,
// slots-to-deadline, fee] ++ [last-sensed xy, neigh_count, region-type
// one-hot, accessible]. Entries are normalized to [0, 1] except
// slots-to-deadline which lives in [-1, 1]; padding entries are exactly 0.
int encoded_length(const EncodingConfig& cfg);

// Number of regions adjacent to g whose global last visit falls within the
// trailing staleness window.
int fresh_neighbor_count(const GridMap& map, RegionId g, Slot t, int window);

AgentStateVector encode_state(const Agent& agent, const OrderTable& orders,
                              const GridMap& map, Slot t,
                              const EncodingConfig& cfg);

// Same encoding with the agent relocated to `location`; every
// location-derived feature (coordinates, region properties, neighbor
// freshness) is recomputed there, everything else is held fixed.
AgentStateVector encode_state_at(const Agent& agent, RegionId location,
                                 const OrderTable& orders, const GridMap& map,
                                 Slot t, const EncodingConfig& cfg);

}  // namespace urbanhuro
