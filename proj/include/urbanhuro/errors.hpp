#pragma once

#include <stdexcept>
#include <string>

namespace urbanhuro {

// Invalid region ids, dangling order references, inaccessible endpoints.
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad run configuration; carries the offending field name in the message.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Constraint-violating dispatch handed to the simulator.
struct ConstraintError : std::runtime_error {
  explicit ConstraintError(const std::string& msg) : std::runtime_error(msg) {}
};

// Failure inside a dispatch worker partition; names the worker.
struct DispatchError : std::runtime_error {
  DispatchError(int worker, const std::string& msg)
      : std::runtime_error("worker " + std::to_string(worker) + ": " + msg),
        worker_index(worker) {}
  int worker_index;
};

// Non-finite loss or other numerical failure during training.
struct TrainingError : std::runtime_error {
  explicit TrainingError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed CSV input; names row and column.
struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace urbanhuro
