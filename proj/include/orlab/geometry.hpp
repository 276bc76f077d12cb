#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "orlab/orlicz_function.hpp"

namespace olab {

// Quasi-concave function sampled on a log grid, with its limiting data.
// Between knots it is linear in t; below the first knot it is the chord from (0, at_zero).
// When `exact` is set, evaluation uses it and the knots are only a sample.
struct QuasiConcaveProfile {
  std::vector<double> t;
  std::vector<double> phi;
  double at_zero = 0.0;     // phi(0+)
  double limit = kInf;      // d = lim_{t -> inf} phi(t)
  double plateau = kInf;    // c = sup{t : phi(t) < d}
  double tail_slope = 0.0;  // slope used past the last knot when `exact` is unset
  std::function<double(double)> exact;

  double operator()(double x) const;
};

// 601 log-spaced knots on [1e-9, 1e9]; t = 1 and every integer power of ten are knots.
std::vector<double> default_profile_grid();

// Samples phi on the default grid. Limits come from `phi` itself.
QuasiConcaveProfile sample_profile(const FundamentalFunction& phi);
// Profile from raw knots; phi(0+), d and c by plateau detection (relative change 1e-10 over the
// first/last decade). Throws DomainError when quasi-concavity fails beyond 1e-9.
QuasiConcaveProfile profile_from_knots(std::vector<double> t, std::vector<double> phi);

// Least concave majorant over the knots plus (0, phi(0+)).
QuasiConcaveProfile concave_majorant(const QuasiConcaveProfile& phi);

struct Regularized {
  QuasiConcaveProfile phi0;
  double k;  // phi0 / k <= phi <= k phi0 at every knot
  double eps;
};
// phi0 = phi o g, g(t) = t on [0, eps], (t - eps)(c - eps)/((t - eps) + (c - eps)) + eps beyond.
// Identity when c = inf. eps defaults to c/2. Throws DomainError unless 0 < eps < c.
Regularized regularize(const QuasiConcaveProfile& phi, std::optional<double> eps = std::nullopt);
double regularizing_map(double t, double eps, double c);

struct ReconstructedOrlicz {
  OrliczFunction psi0;
  std::vector<Knot> knots;  // (1/phi0(t_i), 1/t_i) plus the zero segment
};
// psi0 = 0 on [0, 1/d], 1/phi0^{-1}(1/t) on (1/d, 1/phi0(0+)), inf beyond.
// Throws DomainError when phi0 is not increasing or the result fails a convexity sample check.
ReconstructedOrlicz orlicz_from_fundamental(const QuasiConcaveProfile& phi0);

// sup{s : phi(s) <= u} for a nondecreasing profile.
double profile_inverse(const QuasiConcaveProfile& phi, double u);

}  // namespace olab
