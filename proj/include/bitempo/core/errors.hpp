#pragma once

#include <stdexcept>
#include <string>

namespace bitempo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's contract (shape, sign, range).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A physics precondition does not hold at the requested point.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A user-supplied map produced a non-finite value.
class EvaluationError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Classification impossible at a point (vanishing denominators, zero fields).
class DegeneratePointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A square root of a negative product was requested (complex characteristics).
class ComplexCharacteristicError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Numerical failure of an internal algorithm (blow-up, no convergence).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Integration left the configured bound; carries the last valid parameter.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double last_valid)
      : NumericalError(what), last_valid_(last_valid) {}
  double last_valid() const noexcept { return last_valid_; }

 private:
  double last_valid_;
};

}  // namespace bitempo
