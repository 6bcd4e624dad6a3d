#include "urbanhuro/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "urbanhuro/actions.hpp"
#include "urbanhuro/encoding.hpp"
#include "urbanhuro/errors.hpp"

namespace urbanhuro {

double late_discounted(double fee, Slot delay, double beta) {
  if (delay <= 0) return fee;
  return fee * std::pow(beta, static_cast<double>(delay));
}

double delivery_reward_realized(const Order& order, Slot completion_slot,
                                double beta) {
  if (beta <= 0.0 || beta >= 1.0)
    throw ConfigError("beta must lie in (0, 1)");
  if (order.status != OrderStatus::Completed)
    throw DomainError("delivery_reward_realized: order is not completed");
  return late_discounted(order.fee, completion_slot - order.deadline, beta);
}

namespace {

// Earliest-deadline order with the given status; ties break on order id.
const Order* earliest_with_status(const Agent& agent, const OrderTable& orders,
                                  OrderStatus want) {
  const Order* best = nullptr;
  for (const int oid : agent.assigned_orders) {
    const Order& o = orders.at(oid);
    if (o.status != want) continue;
    if (!best || o.deadline < best->deadline ||
        (o.deadline == best->deadline && o.id < best->id))
      best = &o;
  }
  return best;
}

struct GuardDecision {
  bool fire = false;
  RegionId target = -1;  // next objective when the guard takes over
};

// Earliest-deadline order across both carried and not-yet-picked orders;
// fires when the remaining slack no longer covers the serialized travel
// plus the safety slot.
GuardDecision rv_guard(const GridMap& map, const Agent& rv,
                       const OrderTable& orders, Slot t) {
  const Order* best = nullptr;
  for (const int oid : rv.assigned_orders) {
    const Order& o = orders.at(oid);
    if (o.status != OrderStatus::Assigned && o.status != OrderStatus::PickedUp)
      continue;
    if (!best || o.deadline < best->deadline ||
        (o.deadline == best->deadline && o.id < best->id))
      best = &o;
  }
  if (!best) return {};
  Slot required;
  RegionId next_target;
  if (best->status == OrderStatus::PickedUp) {
    required = travel_time(map, rv.location, best->dropoff);
    next_target = best->dropoff;
  } else {
    required = travel_time(map, rv.location, best->pickup) +
               travel_time(map, best->pickup, best->dropoff);
    next_target = best->pickup;
  }
  const Slot slack = best->deadline - t;
  return {slack <= required + kGuardSafetySlots, next_target};
}

void validate_dispatch(const WorldState& world, const AssignmentSet& dispatch,
                       int capacity) {
  std::map<int, int> per_order;
  std::map<int, int> extra_load;
  for (const auto& [oid, aid] : dispatch.pairs) {
    if (!world.orders.contains(oid))
      throw ConstraintError("dispatch references unknown order " + std::to_string(oid));
    if (world.orders.at(oid).status != OrderStatus::Pending)
      throw ConstraintError("order " + std::to_string(oid) + " is not pending");
    if (aid < 0 || aid >= static_cast<int>(world.agents.size()))
      throw ConstraintError("dispatch references unknown agent " + std::to_string(aid));
    if (++per_order[oid] > 1)
      throw ConstraintError("order " + std::to_string(oid) + " assigned more than once");
    ++extra_load[aid];
  }
  for (const auto& [aid, extra] : extra_load) {
    if (world.agent(aid).load() + extra > capacity)
      throw ConstraintError("agent " + std::to_string(aid) + " exceeds capacity");
  }
}

}  // namespace

std::optional<RegionId> courier_objective(const Agent& agent,
                                          const OrderTable& orders) {
  if (const Order* picked = earliest_with_status(agent, orders, OrderStatus::PickedUp))
    return picked->dropoff;
  if (const Order* assigned = earliest_with_status(agent, orders, OrderStatus::Assigned))
    return assigned->pickup;
  return std::nullopt;
}

StepOutcome step(WorldState& world, const AssignmentSet& dispatch,
                 const std::map<int, RegionId>& routing, const SimConfig& cfg) {
  const Slot t = world.t;
  validate_dispatch(world, dispatch, cfg.capacity);

  StepOutcome out;
  out.records.resize(world.agents.size());

  for (const auto& [oid, aid] : dispatch.pairs) {
    Order& o = world.orders.at(oid);
    o.status = OrderStatus::Assigned;
    o.assigned_agent = aid;
    Agent& a = world.agent(aid);
    a.assigned_orders.insert(
        std::upper_bound(a.assigned_orders.begin(), a.assigned_orders.end(), oid), oid);
    world.events.append({t, EventKind::OrderAssigned, aid, oid, o.pickup});
  }

  // Movement, one cell per slot at most, in agent-id order.
  for (Agent& a : world.agents) {
    const RegionId from = a.location;
    bool guard = false;
    if (a.move_cooldown > 0) {
      --a.move_cooldown;
    } else if (!a.is_rv()) {
      if (const auto obj = courier_objective(a, world.orders); obj && *obj != from)
        a.location = fastest_step(world.map, from, *obj);
    } else {
      if (!a.assigned_orders.empty()) {
        const GuardDecision gd = rv_guard(world.map, a, world.orders, t);
        if (gd.fire) {
          guard = true;
          if (gd.target != from) a.location = fastest_step(world.map, from, gd.target);
        }
      }
      if (!guard) {
        if (const auto it = routing.find(a.id); it != routing.end() && it->second != from) {
          const RegionId target = it->second;
          const bool ok = world.map.valid(target) &&
                          world.map.attr(target).accessible &&
                          chebyshev(world.map, from, target) == 1;
          if (ok)
            a.location = target;
          else
            world.events.append({t, EventKind::RoutingRejected, a.id, -1, target});
        }
      }
    }
    if (a.location != from)
      a.move_cooldown = static_cast<Slot>(std::ceil(
          world.map.slots_per_cell() / world.map.attr(a.location).speed_multiplier)) - 1;
    if (a.is_rv()) {
      out.rv_executed_action[a.id] = action_between(world.map, from, a.location);
      out.rv_guard_fired[a.id] = guard;
    }
  }

  // Pickups, then completions, per agent in id order.
  for (Agent& a : world.agents) {
    SlotRewardRecord& rec = out.records[static_cast<size_t>(a.id)];
    rec.agent_id = a.id;
    for (const int oid : a.assigned_orders) {
      Order& o = world.orders.at(oid);
      if (o.status == OrderStatus::Assigned && o.pickup == a.location) {
        o.status = OrderStatus::PickedUp;
        world.events.append({t, EventKind::OrderPickup, a.id, oid, o.pickup});
      }
    }
    std::vector<int> done;
    for (const int oid : a.assigned_orders) {
      Order& o = world.orders.at(oid);
      if (o.status == OrderStatus::PickedUp && o.dropoff == a.location) {
        o.status = OrderStatus::Completed;
        o.completed_at = t;
        rec.r_delivery += delivery_reward_realized(o, t, cfg.beta);
        rec.completed_order_ids.push_back(oid);
        done.push_back(oid);
        world.events.append({t, EventKind::OrderCompleted, a.id, oid, o.dropoff});
      }
    }
    for (const int oid : done)
      a.assigned_orders.erase(
          std::find(a.assigned_orders.begin(), a.assigned_orders.end(), oid));
  }

  // Deadline bookkeeping: overdue fires exactly once, at the deadline slot.
  for (auto& [oid, o] : world.orders) {
    if (o.deadline == t && o.status != OrderStatus::Completed)
      world.events.append({t, EventKind::OrderOverdue, o.assigned_agent, oid, o.dropoff});
    if (o.status == OrderStatus::Pending && o.deadline <= t) {
      o.status = OrderStatus::ExpiredUnserved;
      world.events.append({t, EventKind::OrderExpired, -1, oid, o.pickup});
    }
  }

  // Passive sensing: rewards are scored against the visit table as of slot
  // start, then all of this slot's visits are applied.
  for (Agent& a : world.agents) {
    SlotRewardRecord& rec = out.records[static_cast<size_t>(a.id)];
    rec.r_sensing = sensing_reward(a, a.location, world, cfg.sensing);
    rec.regions_sensed.push_back(a.location);
    world.events.append({t, EventKind::Sense, a.id, -1, a.location});
  }
  for (Agent& a : world.agents) {
    world.map.record_visit(a.location, t);
    a.last_sensed = a.location;
  }
  for (Agent& a : world.agents)
    a.neigh_count =
        fresh_neighbor_count(world.map, a.location, t, cfg.sensing.staleness_window);

  world.t = t + 1;
  return out;
}

std::vector<Order> generate_orders(const WorkloadConfig& cfg, const GridMap& map,
                                   Slot t, uint64_t seed, int next_order_id) {
  std::vector<Order> out;
  const double rate = cfg.rate_at(t);
  if (rate <= 0.0) return out;

  Rng rng(splitmix64(seed) ^ splitmix64(0x6a09e667f3bcc909ULL + static_cast<uint64_t>(t)));
  std::vector<RegionId> accessible;
  for (RegionId g = 0; g < map.region_count(); ++g)
    if (map.attr(g).accessible) accessible.push_back(g);
  if (accessible.empty()) return out;

  double hotspot_mass = 0.0;
  for (const Hotspot& h : cfg.hotspots) hotspot_mass += h.weight;

  const auto sample_uniform = [&] {
    return accessible[rng.uniform_index(accessible.size())];
  };
  const auto sample_pickup = [&]() -> RegionId {
    if (hotspot_mass <= 0.0 || rng.uniform01() < cfg.uniform_pickup_weight)
      return sample_uniform();
    double r = rng.uniform01() * hotspot_mass;
    const Hotspot* hs = &cfg.hotspots.back();
    double acc = 0.0;
    for (const Hotspot& h : cfg.hotspots) {
      acc += h.weight;
      if (r < acc) { hs = &h; break; }
    }
    for (int attempt = 0; attempt < 16; ++attempt) {
      const int x = map.x_of(hs->region) +
                    static_cast<int>(std::lround(rng.gaussian() * cfg.hotspot_stddev_cells));
      const int y = map.y_of(hs->region) +
                    static_cast<int>(std::lround(rng.gaussian() * cfg.hotspot_stddev_cells));
      if (map.in_bounds(x, y) && map.attr(map.region_at(x, y)).accessible)
        return map.region_at(x, y);
    }
    return sample_uniform();
  };

  const int n = rng.poisson(rate);
  const double extent = std::max(1, std::max(map.width(), map.height()) - 1);
  for (int k = 0; k < n; ++k) {
    Order o;
    o.id = next_order_id + k;
    o.pickup = sample_pickup();
    o.dropoff = sample_uniform();
    o.created_at = t;
    const Slot direct = travel_time(map, o.pickup, o.dropoff);
    const Slot slack = rng.uniform_int(cfg.slack_min, cfg.slack_max);
    o.deadline = t + std::max<Slot>(1, direct + slack);
    const double dist_norm = std::min(1.0, chebyshev(map, o.pickup, o.dropoff) / extent);
    o.fee = cfg.fee_min + (cfg.fee_max - cfg.fee_min) * dist_norm;
    out.push_back(o);
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (const char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& text, int row, const char* column) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ", column " + column +
                     ": cannot parse '" + text + "'");
  }
}

long parse_integer(const std::string& text, int row, const char* column) {
  try {
    size_t pos = 0;
    const long v = std::stol(text, &pos);
    if (pos != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ", column " + column +
                     ": cannot parse '" + text + "'");
  }
}

}  // namespace

IngestResult ingest_orders(const std::string& path, const GridMap& map) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open order file: " + path);

  static const char* kHeader =
      "order_id,pickup_x,pickup_y,dropoff_x,dropoff_y,created_slot,deadline_slot,fee";
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header in " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw ParseError("unexpected header in " + path + ": '" + line + "'");

  IngestResult result;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 8)
      throw ParseError("row " + std::to_string(row) + ": expected 8 fields, got " +
                       std::to_string(fields.size()));

    Order o;
    o.id = static_cast<int>(parse_integer(fields[0], row, "order_id"));
    const int px = static_cast<int>(std::lround(parse_number(fields[1], row, "pickup_x")));
    const int py = static_cast<int>(std::lround(parse_number(fields[2], row, "pickup_y")));
    const int dx = static_cast<int>(std::lround(parse_number(fields[3], row, "dropoff_x")));
    const int dy = static_cast<int>(std::lround(parse_number(fields[4], row, "dropoff_y")));
    o.created_at = static_cast<Slot>(parse_integer(fields[5], row, "created_slot"));
    o.deadline = static_cast<Slot>(parse_integer(fields[6], row, "deadline_slot"));
    o.fee = parse_number(fields[7], row, "fee");

    if (!map.in_bounds(px, py) || !map.in_bounds(dx, dy)) {
      result.rejected.emplace_back(row, "coordinates out of bounds");
      continue;
    }
    o.pickup = map.region_at(px, py);
    o.dropoff = map.region_at(dx, dy);
    if (!map.attr(o.pickup).accessible || !map.attr(o.dropoff).accessible) {
      result.rejected.emplace_back(row, "region inaccessible");
      continue;
    }
    if (o.deadline <= o.created_at)
      throw ParseError("row " + std::to_string(row) +
                       ", column deadline_slot: deadline must be after creation");
    if (o.fee < 0.0)
      throw ParseError("row " + std::to_string(row) + ", column fee: negative fee");
    result.orders.push_back(o);
  }
  return result;
}

}  // namespace urbanhuro
