#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace olab {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(double x) { return std::isfinite(x); }

// Measure-theoretic product: 0 * inf = 0.
inline double ext_mul(double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return a * b;
}

// 1/x on [0, inf] with 1/0 = inf and 1/inf = 0.
inline double ext_recip(double x) {
  if (x == 0.0) return kInf;
  if (std::isinf(x)) return 0.0;
  return 1.0 / x;
}

// Rejected input that violates a documented precondition.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An asserted identity or inequality failed beyond its tolerance.
struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed external input (JSON specs, knot tables).
struct SchemaError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace olab
