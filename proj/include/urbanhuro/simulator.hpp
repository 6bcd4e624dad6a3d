#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "urbanhuro/assignment.hpp"
#include "urbanhuro/rng.hpp"
#include "urbanhuro/sensing_reward.hpp"
#include "urbanhuro/world.hpp"

namespace urbanhuro {

struct SimConfig {
  double beta = 0.85;  // late-delivery discount, in (0, 1)
  int capacity = 3;    // max orders per agent
  SensingRewardConfig sensing;
};

// Extra slots of slack a loaded RV keeps in hand before the deadline guard
// overrides its sensing routing.
constexpr Slot kGuardSafetySlots = 1;

struct StepOutcome {
  std::vector<SlotRewardRecord> records;        // one per agent, id order
  std::map<int, int> rv_executed_action;        // RV id -> action index taken
  std::map<int, bool> rv_guard_fired;           // RV id -> deadline guard hit
};

// fee x beta^(completion - deadline)+; the full fee when on time.
double late_discounted(double fee, Slot delay, double beta);
double delivery_reward_realized(const Order& order, Slot completion_slot,
                                double beta);

// Next region a courier heads for: the dropoff of its earliest-deadline
// picked-up order, else the pickup of its earliest-deadline assigned order,
// else none (hold).
std::optional<RegionId> courier_objective(const Agent& agent,
                                          const OrderTable& orders);

// Advances the world one slot: applies the dispatch, moves couriers along
// fastest routes, moves RVs per `routing` subject to the deadline guard,
// processes pickups/completions/expirations, records passive sensing, and
// emits one reward record per agent. Throws ConstraintError (world
// untouched) if the dispatch violates the matching constraints.
StepOutcome step(WorldState& world, const AssignmentSet& dispatch,
                 const std::map<int, RegionId>& routing, const SimConfig& cfg);

// Poisson arrivals for one slot, deterministic given (cfg, seed, t).
// Pickups follow the hotspot mixture, dropoffs are uniform over accessible
// regions, deadlines add uniform slack to the direct travel time, fees scale
// with trip distance across the configured range.
std::vector<Order> generate_orders(const WorkloadConfig& cfg, const GridMap& map,
                                   Slot t, uint64_t seed, int next_order_id);

struct IngestResult {
  std::vector<Order> orders;
  std::vector<std::pair<int, std::string>> rejected;  // (row number, reason)
};

// Reads the order CSV (header required):
//   order_id,pickup_x,pickup_y,dropoff_x,dropoff_y,created_slot,deadline_slot,fee
// Coordinates are snapped to the nearest region; out-of-bounds rows land in
// `rejected` with their row numbers. Malformed fields and deadline <=
// creation raise ParseError naming row and column.
IngestResult ingest_orders(const std::string& path, const GridMap& map);

}  // namespace urbanhuro
