#pragma once

#include <stdexcept>
#include <string>

namespace tameram {

/// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live over different fields.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

/// Matrix shapes do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A structure failed its axiom validator (Hopf axioms, comodule laws, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An identity that must hold by construction was observed to fail.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Input document does not match the schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// The operation is outside what can be decided at this scale.
class Unsupported : public Error {
 public:
  using Error::Error;
};

}  // namespace tameram
