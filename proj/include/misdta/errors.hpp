#pragma once

#include <stdexcept>
#include <string>

namespace misdta {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical function was called outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A parameter set violates its invariants or is physically degenerate.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input data (measured delays, netlists, documents) failed validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Document does not follow the expected schema. `field()` is the path of the offending field.
class SchemaError : public ValidationError {
 public:
  SchemaError(std::string field, const std::string& what)
      : ValidationError(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Base for failures of numerical kernels.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class NoSignChangeError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoCrossingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class StepUnderflowError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The simulator computed an output event earlier than causality allows.
class CausalityError : public Error {
 public:
  using Error::Error;
};

/// Event cap exceeded (probable oscillation).
class LivelockError : public Error {
 public:
  using Error::Error;
};

}  // namespace misdta
