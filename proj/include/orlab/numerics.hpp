#pragma once

#include <functional>
#include <span>
#include <vector>

namespace olab {

// n log-spaced points from a to b inclusive (a, b > 0).
std::vector<double> log_grid(double a, double b, std::size_t n);

// Smallest x in (lo, hi] with pred(x) true, given pred(lo) false, pred(hi) true and pred
// monotone. Bisects geometrically while hi/lo > 2 (lo > 0), arithmetically afterwards.
// Stops when (hi - lo) <= rel_tol * hi or after max_iter halvings; returns hi.
double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi,
                        double rel_tol = 1e-15, int max_iter = 2000);

struct GoldenResult {
  double x;
  double fx;
};
// Minimizer of a unimodal f on [a, b].
GoldenResult golden_min(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                        int max_iter = 300);

// Adaptive Simpson quadrature with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 40);

// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

// Pool-adjacent-violators projection onto nonincreasing sequences (unit weights by default).
std::vector<double> isotonic_nonincreasing(std::span<const double> y, std::span<const double> w = {});

}  // namespace olab
