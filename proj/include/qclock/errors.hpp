#pragma once

#include <stdexcept>
#include <string>

namespace qclock {

// Base class for everything thrown by this library.
struct ClockError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A parameter lies outside its admissible domain (d < 2, nonpositive
// couplings, inverted bath ordering, malformed config values, ...).
struct ValidationError : ClockError {
  using ClockError::ClockError;
};

// A variant-specific formula was invoked with parameters that select a
// different variant (e.g. the single-machine expression with M > 1).
struct WrongVariantError : ClockError {
  using ClockError::ClockError;
};

// The two bath partition functions coincide (Z_H == Z_C), so the machines
// carry no population gradient and the closed-form coefficients degenerate.
struct DegenerateGradientError : ClockError {
  using ClockError::ClockError;
};

// A brute-force construction would exceed the dense-method guardrail.
struct SizeError : ClockError {
  using ClockError::ClockError;
};

// An internal consistency check failed (quadrature non-convergence,
// normalization self-check, impossible survival probability, ...).
struct NumericalError : ClockError {
  using ClockError::ClockError;
};

// The hazard accumulates so slowly over a cycle that tick statistics are
// numerically meaningless: the rate tends to zero and the accuracy is
// undefined rather than small.
struct DegenerateProfileError : ClockError {
  using ClockError::ClockError;
};

}  // namespace qclock
