#pragma once

#include <stdexcept>
#include <string>

namespace sphbounds {

/// Invalid dimension, degree, size or mismatched arguments.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain (e.g. t outside [-1,1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation not supported for this input (oracle limits, explicit-form certificates).
class CapabilityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A documented precondition of a bound does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Inner-product clusters cannot be separated at the requested tolerance.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data failed validation (non-unit points, malformed files).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Certificate JSON does not match any known shape.
class SchemaError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

}  // namespace sphbounds
