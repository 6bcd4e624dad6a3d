#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "urbanhuro/agents.hpp"
#include "urbanhuro/grid.hpp"
#include "urbanhuro/orders.hpp"

namespace urbanhuro {

constexpr int kSlotsPerHour = 60;

enum class EventKind {
  OrderCreated,
  OrderAssigned,
  OrderPickup,
  OrderCompleted,
  OrderExpired,
  OrderOverdue,
  Sense,
  RoutingRejected,
};

const char* to_string(EventKind k);

struct Event {
  Slot slot = 0;
  EventKind kind = EventKind::Sense;
  int agent_id = -1;   // -1 when not applicable
  int order_id = -1;
  RegionId region = -1;
};

// Append-only; slots are non-decreasing.
class EventLog {
 public:
  void append(const Event& e);
  const std::vector<Event>& events() const { return events_; }
  size_t size() const { return events_.size(); }
  // One JSON object per line: {"slot":..,"kind":..,"agent_id":..,"order_id":..,"region":..}
  std::string to_jsonl() const;

 private:
  std::vector<Event> events_;
};

struct WorldState {
  Slot t = 0;
  GridMap map;
  std::vector<Agent> agents;  // indexed by agent id
  OrderTable orders;
  uint64_t rng_seed = 0;
  EventLog events;

  explicit WorldState(GridMap m) : map(std::move(m)) {}
  const Agent& agent(int id) const { return agents[static_cast<size_t>(id)]; }
  Agent& agent(int id) { return agents[static_cast<size_t>(id)]; }
};

struct Hotspot {
  RegionId region = 0;
  double weight = 1.0;
};

// Synthetic workload description: order arrivals, fees, deadlines, fleet
// sizes and starting placement.
struct WorkloadConfig {
  double arrival_rate = 0.1;                // orders per slot, base level
  std::vector<double> hourly_profile;       // optional 24 multipliers
  double fee_min = 4.0;
  double fee_max = 12.0;
  int slack_min = 0;                        // slots added beyond direct travel
  int slack_max = 8;
  std::vector<Hotspot> hotspots;            // pickup mixture components
  double hotspot_stddev_cells = 1.5;
  double uniform_pickup_weight = 0.1;       // mass of the uniform mixture part
  Slot horizon = 720;
  int n_couriers = 50;
  int n_rvs = 50;
  bool couriers_start_at_hotspots = true;
  std::string orders_csv;                   // when set, replaces the generator

  double rate_at(Slot t) const {
    if (hourly_profile.empty()) return arrival_rate;
    const int hour = (t / kSlotsPerHour) % 24;
    return arrival_rate * hourly_profile[static_cast<size_t>(hour)];
  }
};

// Per-agent outcome of one simulation slot.
struct SlotRewardRecord {
  int agent_id = -1;
  double r_delivery = 0.0;
  double r_sensing = 0.0;
  std::vector<int> completed_order_ids;
  std::vector<RegionId> regions_sensed;
};

}  // namespace urbanhuro
