#pragma once

#include <map>
#include <vector>

#include "urbanhuro/grid.hpp"

namespace urbanhuro {

enum class OrderStatus { Pending, Assigned, PickedUp, Completed, ExpiredUnserved };

const char* to_string(OrderStatus s);

struct Order {
  int id = -1;
  RegionId pickup = 0;
  RegionId dropoff = 0;
  Slot created_at = 0;
  Slot deadline = 0;
  double fee = 0.0;
  OrderStatus status = OrderStatus::Pending;
  Slot completed_at = -1;
  int assigned_agent = -1;
};

// Keyed by order id; iteration order is ascending id.
class OrderTable {
 public:
  void insert(const Order& o);
  bool contains(int id) const { return orders_.count(id) > 0; }
  const Order& at(int id) const;  // throws DomainError on a dangling id
  Order& at(int id);
  size_t size() const { return orders_.size(); }

  std::vector<int> pending_ids() const;

  auto begin() const { return orders_.begin(); }
  auto end() const { return orders_.end(); }
  auto begin() { return orders_.begin(); }
  auto end() { return orders_.end(); }

 private:
  std::map<int, Order> orders_;
};

// Status transitions are monotone: Pending -> Assigned -> PickedUp ->
// Completed, with ExpiredUnserved reachable only from Pending.
bool status_transition_allowed(OrderStatus from, OrderStatus to);

}  // namespace urbanhuro
