#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "orlab/extended.hpp"

namespace olab {

enum class OrliczKind { power, linf, one_cap_inf, one_plus_inf, table, numeric_conjugate, evaluator };

struct Knot {
  double t;
  double v;
};

// Convex psi: [0, inf) -> [0, inf], psi(0) = 0, left-continuous at b_psi, infinite beyond it.
// Immutable; copies share state.
class OrliczFunction {
 public:
  // coef * t^p, p >= 1.
  static OrliczFunction power(double p, double coef = 1.0);
  // 0 on [0, cutoff], inf beyond.
  static OrliczFunction linf(double cutoff = 1.0);
  // t on [0, 1], inf beyond.
  static OrliczFunction one_cap_inf();
  // 0 on [0, 1], t - 1 beyond.
  static OrliczFunction one_plus_inf();
  // Piecewise-linear through the knots; past the last knot the final slope continues up to b_psi.
  // Throws SchemaError naming the first offending knot when convexity or monotonicity fails.
  static OrliczFunction table(std::vector<Knot> knots, double b_psi = kInf);
  // Arbitrary convex evaluator; convexity is checked on a sample grid by the caller that builds it.
  static OrliczFunction from_evaluator(std::string label, std::function<double(double)> f, double b_psi);

  double operator()(double t) const;

  OrliczKind kind() const;
  std::string label() const;
  double exponent() const;     // p for power; 1 otherwise
  double coefficient() const;  // coef for power, cutoff for linf
  double b_psi() const;
  // sup{t : psi(t) = 0}.
  double zero_level() const;
  // sup{u : psi*(u) < inf}: lim psi(v)/v when b_psi = inf, otherwise inf.
  double conjugate_domain() const;
  double left_derivative(double t) const;
  double right_derivative(double t) const;
  std::span<const Knot> knots() const;
  // For a numeric conjugate, the function it was built from.
  const OrliczFunction* conjugate_source() const;
  bool is_builtin() const;

  struct Impl;

 private:
  explicit OrliczFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
  friend OrliczFunction numeric_conjugate(const OrliczFunction&);
};

// sup{s : psi(s) <= t}; closed form for builtins, bisection on [0, b_psi] otherwise.
double inverse(const OrliczFunction& psi, double t);

// psi*(u) = sup_v (uv - psi(v)). Closed forms for builtins and knot tables; grid supremum otherwise.
OrliczFunction conjugate(const OrliczFunction& psi);

// Always takes the log-grid path: 2000 points on [1e-10, 1e10] plus golden refinement at the argmax.
OrliczFunction numeric_conjugate(const OrliczFunction& psi);

enum class FundamentalKind { luxemburg, orlicz, user };

// Quasi-concave function on (0, inf): nondecreasing, phi(t)/t nonincreasing.
class FundamentalFunction {
 public:
  FundamentalFunction(FundamentalKind kind, std::string label, std::function<double(double)> eval);

  double operator()(double t) const { return eval_(t); }
  FundamentalKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  double at_zero() const { return at_zero_; }
  double at_infinity() const { return at_inf_; }
  // Power-law exponents: phi(u) ~ u^e as u -> 0 and as u -> inf.
  double exponent_zero() const { return exp_zero_; }
  double exponent_infinity() const { return exp_inf_; }

  // inf{u > 0 : phi(u) > c}; 0 when phi(0+) > c, inf when phi never exceeds c.
  double upper_level(double c) const;
  // Same quantity, always by bisection in log u.
  double upper_level_bisect(double c) const;

  FundamentalFunction with_limits(double at_zero, double at_inf, double exp_zero, double exp_inf) const;
  FundamentalFunction with_upper_level(std::function<double(double)> level) const;

 private:
  FundamentalKind kind_;
  std::string label_;
  std::function<double(double)> eval_;
  std::function<double(double)> level_;
  double at_zero_ = 0.0;
  double at_inf_ = kInf;
  double exp_zero_ = 1.0;
  double exp_inf_ = 1.0;
};

// phi_psi(t) = 1 / psi^{-1}(1/t).
FundamentalFunction fundamental_lux(const OrliczFunction& psi);
// tilde phi_psi(t) = t (psi*)^{-1}(1/t).
FundamentalFunction fundamental_orl(const OrliczFunction& psi);
// User quasi-concave function; limits and tail exponents estimated from samples.
FundamentalFunction fundamental_user(std::string label, std::function<double(double)> f);

// k(t) = sup_s phi(st)/phi(s) over 1601 log-spaced s in [1e-8, 1e8].
double dilation(const FundamentalFunction& phi, double t);
double dilation(const OrliczFunction& psi, double t);

struct BoydReport {
  bool normable;
  double constant;     // C = int_0^1 k_{psi*}(t)/t dt
  double alpha_lower;  // least-squares slope of log k_{psi*} on [1e-6, 1e-5]
  static constexpr const char* estimator = "heuristic: least-squares slope on t in [1e-6, 1e-5]";
};
BoydReport boyd_normability(const OrliczFunction& psi);

struct GrowthReport {
  double k;            // phi_psi(1)
  bool bound_holds;    // phi_psi(t) <= k (1 + t) on the sample grid
  double worst_ratio;  // max phi_psi(t) / (k (1 + t))
};
GrowthReport growth_constant(const OrliczFunction& psi);

}  // namespace olab
