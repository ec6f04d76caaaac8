#pragma once

#include <stdexcept>
#include <string>

namespace bizeta {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input document or expression.
struct ParseError : Error {
  using Error::Error;
};

/// A structural invariant of the input data fails (Jacobi identity,
/// declared nilpotency class, basis span conditions, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// A counting operation was requested at a prime where the underlying
/// formulas are not valid (class gate, bad prime).
struct GateError : Error {
  using Error::Error;
};

/// An enumeration would exceed the configured point ceiling.
struct CeilingError : Error {
  using Error::Error;
};

/// Internal exactness check failed (pairing of antisymmetric divisor types,
/// generic-rank certification, non-integral series coefficient, ...).
struct MathError : Error {
  using Error::Error;
};

/// Rational-function fitting failed; `inconsistent` distinguishes a wrong
/// denominator guess from an insufficient truncation order.
struct FitError : Error {
  bool inconsistent;
  FitError(const std::string& what, bool inconsistent_)
      : Error(what), inconsistent(inconsistent_) {}
};

/// A substitution sent a denominator factor to zero.
struct PoleError : Error {
  using Error::Error;
};

}  // namespace bizeta
