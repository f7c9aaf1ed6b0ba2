#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qdm {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built on different scales (or different outcome spaces).
class ScaleMismatch : public Error {
 public:
  using Error::Error;
};

/// A value violates a membership constraint, e.g. a non-normalized lottery
/// handed to a criterion that is only defined on normalized ones.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Non-fatal diagnostics collected by operations that accept degenerate
/// inputs (all-zero lotteries, unusual assignments).
struct Warnings {
  std::vector<std::string> messages;

  void add(std::string msg) { messages.push_back(std::move(msg)); }
  bool empty() const { return messages.empty(); }
};

}  // namespace qdm
