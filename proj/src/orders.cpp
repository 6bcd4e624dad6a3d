#include "urbanhuro/orders.hpp"

#include <string>

#include "urbanhuro/errors.hpp"

namespace urbanhuro {

const char* to_string(OrderStatus s) {
  switch (s) {
    case OrderStatus::Pending: return "pending";
    case OrderStatus::Assigned: return "assigned";
    case OrderStatus::PickedUp: return "picked_up";
    case OrderStatus::Completed: return "completed";
    case OrderStatus::ExpiredUnserved: return "expired_unserved";
  }
  return "?";
}

void OrderTable::insert(const Order& o) {
  if (o.deadline <= o.created_at)
    throw DomainError("order " + std::to_string(o.id) + ": deadline must be after creation");
  if (o.fee < 0.0)
    throw DomainError("order " + std::to_string(o.id) + ": negative fee");
  orders_[o.id] = o;
}

const Order& OrderTable::at(int id) const {
  auto it = orders_.find(id);
  if (it == orders_.end())
    throw DomainError("dangling order id " + std::to_string(id));
  return it->second;
}

Order& OrderTable::at(int id) {
  auto it = orders_.find(id);
  if (it == orders_.end())
    throw DomainError("dangling order id " + std::to_string(id));
  return it->second;
}

std::vector<int> OrderTable::pending_ids() const {
  std::vector<int> ids;
  for (const auto& [id, o] : orders_)
    if (o.status == OrderStatus::Pending) ids.push_back(id);
  return ids;
}

bool status_transition_allowed(OrderStatus from, OrderStatus to) {
  using S = OrderStatus;
  switch (from) {
    case S::Pending: return to == S::Assigned || to == S::ExpiredUnserved;
    case S::Assigned: return to == S::PickedUp;
    case S::PickedUp: return to == S::Completed;
    case S::Completed:
    case S::ExpiredUnserved: return false;
  }
  return false;
}

}  // namespace urbanhuro
