#pragma once

#include <utility>
#include <vector>

#include "urbanhuro/grid.hpp"

namespace urbanhuro {

// Scored candidate pair. The combined score is always r_d + v_s.
struct PairScore {
  int order_id = -1;
  int agent_id = -1;
  double r_d = 0.0;
  double v_s = 0.0;
  double total() const { return r_d + v_s; }
};

// The per-slot matching produced by a dispatch policy: each order appears
// at most once; per-agent load (new pairs plus pre-existing assignments)
// stays within capacity.
struct AssignmentSet {
  Slot slot = 0;
  std::vector<std::pair<int, int>> pairs;  // (order id, agent id), sorted
  double delivery_reward = 0.0;
  double sensing_value = 0.0;

  bool empty() const { return pairs.empty(); }
  size_t size() const { return pairs.size(); }
};

}  // namespace urbanhuro
