#include <algorithm>
#include <cmath>

#include "orlab/numerics.hpp"
#include "orlab/orlicz_function.hpp"

namespace olab {

namespace {

double log_slope(const std::function<double(double)>& f, double a, double b) {
  const double fa = f(a), fb = f(b);
  if (!(fa > 0) || !(fb > 0) || !std::isfinite(fa) || !std::isfinite(fb)) return 0.0;
  return std::log(fb / fa) / std::log(b / a);
}

// Snap a sampled limit to 0 or inf when it is clearly drifting there.
double clean_limit(double v) {
  if (v < 1e-100) return 0.0;
  if (v > 1e100) return kInf;
  return v;
}

}  // namespace

FundamentalFunction::FundamentalFunction(FundamentalKind kind, std::string label, std::function<double(double)> eval)
    : kind_(kind), label_(std::move(label)), eval_(std::move(eval)) {
  at_zero_ = clean_limit(eval_(1e-300));
  at_inf_ = clean_limit(eval_(1e300));
  exp_zero_ = log_slope(eval_, 1e-14, 1e-13);
  exp_inf_ = log_slope(eval_, 1e13, 1e14);
}

FundamentalFunction FundamentalFunction::with_limits(double at_zero, double at_inf, double exp_zero,
                                                     double exp_inf) const {
  FundamentalFunction f = *this;
  f.at_zero_ = at_zero;
  f.at_inf_ = at_inf;
  f.exp_zero_ = exp_zero;
  f.exp_inf_ = exp_inf;
  return f;
}

FundamentalFunction FundamentalFunction::with_upper_level(std::function<double(double)> level) const {
  FundamentalFunction f = *this;
  f.level_ = std::move(level);
  return f;
}

double FundamentalFunction::upper_level(double c) const {
  if (level_) return level_(c);
  return upper_level_bisect(c);
}

double FundamentalFunction::upper_level_bisect(double c) const {
  if (c < at_zero_) return 0.0;
  if (c >= at_inf_) return kInf;
  // Bracket lo with phi(lo) <= c and hi with phi(hi) > c.
  double lo = 1.0, hi = 1.0;
  if (eval_(1.0) > c) {
    while (eval_(lo) > c) {
      lo *= 0.25;
      if (lo < 1e-300) return 0.0;
    }
    hi = lo * 4.0;
  } else {
    while (eval_(hi) <= c) {
      hi *= 4.0;
      if (hi > 1e300) return kInf;
    }
    lo = hi * 0.25;
  }
  return bisect_threshold([&](double u) { return eval_(u) > c; }, lo, hi, 1e-16, 400);
}

FundamentalFunction fundamental_lux(const OrliczFunction& psi) {
  switch (psi.kind()) {
    case OrliczKind::power: {
      const double p = psi.exponent(), c = psi.coefficient();
      FundamentalFunction f(FundamentalKind::luxemburg, "phi[" + psi.label() + "]",
                            [p, c](double t) { return std::pow(c * t, 1.0 / p); });
      return f.with_limits(0.0, kInf, 1.0 / p, 1.0 / p).with_upper_level([p, c](double y) {
        return y <= 0 ? 0.0 : std::pow(y, p) / c;
      });
    }
    case OrliczKind::linf: {
      const double b = psi.coefficient();
      FundamentalFunction f(FundamentalKind::luxemburg, "phi[" + psi.label() + "]", [b](double) { return 1.0 / b; });
      return f.with_limits(1.0 / b, 1.0 / b, 0.0, 0.0).with_upper_level([b](double y) {
        return y < 1.0 / b ? 0.0 : kInf;
      });
    }
    case OrliczKind::one_cap_inf: {
      FundamentalFunction f(FundamentalKind::luxemburg, "phi[one-cap-inf]",
                            [](double t) { return std::max(1.0, t); });
      return f.with_limits(1.0, kInf, 0.0, 1.0).with_upper_level([](double y) { return y < 1.0 ? 0.0 : y; });
    }
    case OrliczKind::one_plus_inf: {
      FundamentalFunction f(FundamentalKind::luxemburg, "phi[one-plus-inf]",
                            [](double t) { return t / (1.0 + t); });
      return f.with_limits(0.0, 1.0, 1.0, 0.0).with_upper_level([](double y) {
        if (y < 0) return 0.0;
        return y >= 1.0 ? kInf : y / (1.0 - y);
      });
    }
    default:
      break;
  }
  return FundamentalFunction(FundamentalKind::luxemburg, "phi[" + psi.label() + "]",
                             [psi](double t) { return ext_recip(inverse(psi, ext_recip(t))); });
}

FundamentalFunction fundamental_orl(const OrliczFunction& psi) {
  const OrliczFunction conj = conjugate(psi);
  auto eval = [conj](double t) {
    if (t <= 0) return 0.0;
    return ext_mul(t, inverse(conj, ext_recip(t)));
  };
  FundamentalFunction f(FundamentalKind::orlicz, "tphi[" + psi.label() + "]", eval);
  switch (psi.kind()) {
    case OrliczKind::power:
      return f.with_limits(0.0, kInf, 1.0 / psi.exponent(), 1.0 / psi.exponent());
    case OrliczKind::linf:
      return f.with_limits(1.0 / psi.coefficient(), 1.0 / psi.coefficient(), 0.0, 0.0);
    case OrliczKind::one_cap_inf:
      return f.with_limits(1.0, kInf, 0.0, 1.0);
    case OrliczKind::one_plus_inf:
      return f.with_limits(0.0, 1.0, 1.0, 0.0);
    default:
      return f;
  }
}

FundamentalFunction fundamental_user(std::string label, std::function<double(double)> f) {
  return FundamentalFunction(FundamentalKind::user, std::move(label), std::move(f));
}

double dilation(const FundamentalFunction& phi, double t) {
  if (!(t > 0)) throw DomainError("dilation: t must be positive");
  static const std::vector<double> grid = log_grid(1e-8, 1e8, 1601);
  double best = 0.0;
  for (double s : grid) {
    const double den = phi(s);
    if (!(den > 0) || !std::isfinite(den)) continue;
    const double num = phi(s * t);
    best = std::max(best, num / den);
  }
  return best;
}

double dilation(const OrliczFunction& psi, double t) { return dilation(fundamental_lux(psi), t); }

BoydReport boyd_normability(const OrliczFunction& psi) {
  const FundamentalFunction phi_conj = fundamental_lux(conjugate(psi));
  auto k = [&](double t) { return dilation(phi_conj, t); };

  const auto ts = log_grid(1e-6, 1e-5, 11);
  std::vector<double> lx, ly;
  for (double t : ts) {
    const double kt = k(t);
    if (!(kt > 0) || !std::isfinite(kt)) continue;
    lx.push_back(std::log(t));
    ly.push_back(std::log(kt));
  }
  BoydReport r{false, kInf, 0.0};
  if (lx.size() < 2) return r;
  r.alpha_lower = least_squares_slope(lx, ly);
  if (r.alpha_lower <= 1e-3) return r;

  constexpr double kCut = 1e-8;
  const double body = adaptive_simpson([&](double x) { return k(std::exp(x)); }, std::log(kCut), 0.0, 1e-8);
  // Below the cut k is treated as the power law k(kCut) (t/kCut)^alpha.
  const double tail = k(kCut) / r.alpha_lower;
  r.constant = body + tail;
  r.normable = std::isfinite(r.constant);
  return r;
}

GrowthReport growth_constant(const OrliczFunction& psi) {
  const FundamentalFunction phi = fundamental_lux(psi);
  GrowthReport r{phi(1.0), true, 0.0};
  for (double t : log_grid(1e-9, 1e9, 721)) {
    const double ratio = phi(t) / (r.k * (1.0 + t));
    r.worst_ratio = std::max(r.worst_ratio, ratio);
    if (ratio > 1.0 + 1e-12) r.bound_holds = false;
  }
  return r;
}

}  // namespace olab
