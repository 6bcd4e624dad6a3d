#include "urbanhuro/world.hpp"

#include <sstream>

#include "urbanhuro/errors.hpp"

namespace urbanhuro {

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::OrderCreated: return "order_created";
    case EventKind::OrderAssigned: return "order_assigned";
    case EventKind::OrderPickup: return "order_pickup";
    case EventKind::OrderCompleted: return "order_completed";
    case EventKind::OrderExpired: return "order_expired";
    case EventKind::OrderOverdue: return "order_overdue";
    case EventKind::Sense: return "sense";
    case EventKind::RoutingRejected: return "routing_rejected";
  }
  return "?";
}

void EventLog::append(const Event& e) {
  if (!events_.empty() && e.slot < events_.back().slot)
    throw DomainError("event log slots must be non-decreasing");
  events_.push_back(e);
}

std::string EventLog::to_jsonl() const {
  std::ostringstream out;
  for (const Event& e : events_) {
    out << "{\"slot\":" << e.slot << ",\"kind\":\"" << to_string(e.kind)
        << "\",\"agent_id\":" << e.agent_id << ",\"order_id\":" << e.order_id
        << ",\"region\":" << e.region << "}\n";
  }
  return out.str();
}

}  // namespace urbanhuro
