#pragma once

#include <stdexcept>
#include <string>

namespace mtv {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input (bad rational string, bad eta spec, singular curve).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Request lies outside the supported arithmetic scope (composite level,
/// nontrivial exact character data, M > 1 without newform data).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A mathematical assertion that must hold failed.  Either a bug or a
/// genuine counterexample; the message names the assertion.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Two operands live in incompatible coefficient domains.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// A series does not carry enough terms for the requested operation.
class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what, long required = -1)
      : Error(what), required_order(required) {}
  long required_order;
};

/// Numerical working precision was exhausted; callers retry with more bits.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Iterative numerical method failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace mtv
