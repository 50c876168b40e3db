#pragma once

#include <stdexcept>
#include <string>

namespace hmpack {

/// Malformed or inconsistent input (dimension mismatch, bad data, unbounded where bounded is required).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The instance is well formed but admits no solution (an item that fits no bin, a job that fits no machine).
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget was exceeded. The budget name is kept so callers can report it.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::string budget, const std::string& what)
      : std::runtime_error(what), budget_(std::move(budget)) {}

  const std::string& budget() const noexcept { return budget_; }

 private:
  std::string budget_;
};

/// An internal invariant failed. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define HMPACK_ASSERT(cond, msg)                                                     \
  do {                                                                               \
    if (!(cond)) throw ::hmpack::InternalError(std::string(__FILE__ ":") +           \
                                               std::to_string(__LINE__) + ": " + (msg)); \
  } while (0)

}  // namespace hmpack
