#pragma once

#include <stdexcept>
#include <string>

namespace k3fix {

/// Caller handed us something outside an operation's domain (bad name,
/// mismatched conductors, malformed scenario). Maps to CLI exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact arithmetic failure, e.g. inverting zero in a cyclotomic field.
class ArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A constraint set that admits no solution where one is required.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed. Maps to CLI exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace k3fix
