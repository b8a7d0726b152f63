#pragma once

#include <stdexcept>
#include <string>

namespace zerorate {

/// Market parameters violate one of the model assumptions (A1-A3,
/// positivity, or the exogenous-capacity conditions).
class AssumptionViolation : public std::runtime_error {
 public:
  explicit AssumptionViolation(const std::string& what)
      : std::runtime_error(what) {}
};

/// Caller broke an operation's stated precondition.
class PreconditionViolation : public std::invalid_argument {
 public:
  explicit PreconditionViolation(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Iterative solver did not reach the requested residual.
class NoConvergence : public std::runtime_error {
 public:
  explicit NoConvergence(const std::string& what)
      : std::runtime_error(what) {}
};

/// A queue in the simulator is offered load at or above its service rate.
class UnstableQueue : public std::runtime_error {
 public:
  explicit UnstableQueue(const std::string& what)
      : std::runtime_error(what) {}
};

/// Simulation configuration is invalid.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace zerorate
