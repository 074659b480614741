#pragma once

#include <stdexcept>
#include <string>

namespace tenseg {

// Document / precondition problems.  The CLI maps these to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (carries the parser's position in the message).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Base for numeric failures.  The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Both partial derivatives are identically zero (constant field).
struct ZeroGradientField : NumericError {
  using NumericError::NumericError;
};

// A located gradient zero has a (near-)singular Hessian.
struct NonMorseField : NumericError {
  using NumericError::NumericError;
};

struct DegenerateHessian : NumericError {
  using NumericError::NumericError;
};

// A vertex field has no critical point inside the scene viewport.
struct NoCriticalPoints : NumericError {
  using NumericError::NumericError;
};

// A projective image of a vertex lands (numerically) on the line at infinity.
struct PointAtInfinity : NumericError {
  using NumericError::NumericError;
};

struct IdenticallyZeroField : NumericError {
  using NumericError::NumericError;
};

// Filesystem failures.  The CLI maps these to exit code 4.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tenseg
