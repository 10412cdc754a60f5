#pragma once

#include <stdexcept>
#include <string>

namespace rmt {

/// Caller violated an operation's precondition (mismatched series, bad flag, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or resource budget would be exceeded.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the mathematical domain of a formula (branch cut, singular point).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical tolerance could not be reached.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// An invariant that should hold by construction failed; signals a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rmt
