#pragma once

#include <stdexcept>
#include <string>

namespace fracorder {

// Invalid input: an argument outside the operation's domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Derivative queried at a point where it does not exist (kink or jump).
class NonDifferentiableError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A numerical procedure failed to deliver a result with the requested
// accuracy. The inputs were valid.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BudgetExceededError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Raised by the order fit when the data do not describe a decaying power law.
class DegenerateFitError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace fracorder
