#pragma once

#include "urbanhuro/agents.hpp"
#include "urbanhuro/world.hpp"

namespace urbanhuro {

// Weights and ablation switches for the per-slot sensing reward.
struct SensingRewardConfig {
  double w_reg = 1.0;
  double w_nbr = 0.5;
  double w_pen = 10.0;
  int staleness_window = 60;
  bool use_reg = true;
  bool use_nbr = true;
  bool use_pen = true;
};

// Sensing reward collected by `agent` for occupying region g at the end of
// the current slot: the regional term pays when g itself is stale, the
// neighbor term pays the stale fraction of g's neighborhood, and the
// penalty term fires when one of the agent's orders misses its deadline
// this slot. Reads the last-visit table as of slot start.
double sensing_reward(const Agent& agent, RegionId g, const WorldState& world,
                      const SensingRewardConfig& cfg);

}  // namespace urbanhuro
