#pragma once

#include <stdexcept>
#include <string>

namespace pallab {

/// A precondition of an operation was violated by its arguments.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exact integer result does not fit the library's integer width.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// The input is valid but outside what the implementation handles.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to reach its requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

/// A campaign would exceed its work budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pallab
