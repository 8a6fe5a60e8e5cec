#pragma once

#include <stdexcept>
#include <string>

namespace rvz {

/// Bad user-supplied data (dimension mismatch, malformed file, unknown subset, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation not defined for the given variant (e.g. kernel evaluation on an explicit matrix).
class UnsupportedOperation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configurable enumeration/search budget was exceeded. `required` carries the
/// budget that would have been needed when that is known, otherwise 0.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, double required_budget = 0.0)
      : std::runtime_error(what), required(required_budget) {}
  double required;
};

/// Two independent computation routes disagreed beyond tolerance. Always a bug signal.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rvz
