#pragma once

#include <stdexcept>
#include <string>

namespace sumrules {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A requested eigenvalue sum does not converge.
class DivergentSum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver (root finder, shooting, matching) failed to converge
/// or was configured with insufficient range.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Quadrature did not reach the requested tolerance. Carries the best
/// estimate obtained so the caller may still inspect it.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Bad command-line or case identifier.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sumrules
