#ifndef PREFAB_ERRORS_HPP
#define PREFAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace prefab {

/// Malformed or inconsistent input (scene files, plans, parameters).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reference to a wall or obstacle id that does not exist.
class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// A call whose documented precondition does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Planner-level infeasibility.
class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prefab

#endif  // PREFAB_ERRORS_HPP
