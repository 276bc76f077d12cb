#include "orlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orlab/numerics.hpp"

namespace olab {

namespace {

constexpr double kQcTol = 1e-9;
constexpr double kPlateauTol = 1e-10;

void check_quasi_concave(const std::vector<double>& t, const std::vector<double>& phi) {
  if (t.size() != phi.size() || t.empty()) throw DomainError("profile: knot arrays must be nonempty and of equal length");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0) || !std::isfinite(t[i])) throw DomainError("profile: knot " + std::to_string(i) + " has t <= 0");
    if (!(phi[i] >= 0) || !std::isfinite(phi[i]))
      throw DomainError("profile: knot " + std::to_string(i) + " has a negative or non-finite value");
    if (i == 0) continue;
    if (!(t[i] > t[i - 1])) throw DomainError("profile: knots not strictly increasing at index " + std::to_string(i));
    if (phi[i] < phi[i - 1] * (1 - kQcTol))
      throw DomainError("profile: decreasing at index " + std::to_string(i));
    if (phi[i] / t[i] > phi[i - 1] / t[i - 1] * (1 + kQcTol))
      throw DomainError("profile: phi(t)/t increasing at index " + std::to_string(i));
  }
}

// Concavity of the chain (0, at_zero), (t_i, phi_i): consecutive slopes nonincreasing.
bool chain_is_concave(const QuasiConcaveProfile& p) {
  double prev = (p.phi[0] - p.at_zero) / p.t[0];
  for (std::size_t i = 1; i < p.t.size(); ++i) {
    const double s = (p.phi[i] - p.phi[i - 1]) / (p.t[i] - p.t[i - 1]);
    // Rounding in phi differences is amplified by 1/dt.
    const double round = 8 * std::numeric_limits<double>::epsilon() * p.phi[i] / (p.t[i] - p.t[i - 1]);
    const double scale = std::max({std::abs(s), std::abs(prev), p.phi[i] / p.t[i]});
    if (s > prev + kQcTol * scale + round) return false;
    prev = s;
  }
  return true;
}

double plateau_of(const std::vector<double>& t, const std::vector<double>& phi, double d) {
  if (!std::isfinite(d)) return kInf;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (phi[i] >= d * (1 - kPlateauTol)) return t[i];
  return kInf;
}

}  // namespace

double QuasiConcaveProfile::operator()(double x) const {
  if (exact) return exact(x);
  if (!(x > 0)) return at_zero;
  if (x <= t.front()) return at_zero + (phi.front() - at_zero) * (x / t.front());
  if (x >= t.back()) return std::min(limit, phi.back() + tail_slope * (x - t.back()));
  const auto it = std::upper_bound(t.begin(), t.end(), x);
  const std::size_t i = std::size_t(it - t.begin()) - 1;
  const double w = (x - t[i]) / (t[i + 1] - t[i]);
  return phi[i] + w * (phi[i + 1] - phi[i]);
}

std::vector<double> default_profile_grid() {
  std::vector<double> g(601);
  for (int i = 0; i <= 600; ++i) g[std::size_t(i)] = std::pow(10.0, -9.0 + 0.03 * i);
  for (int e = -9; e <= 9; ++e) g[std::size_t((e + 9) * 100 / 3)] = std::pow(10.0, e);
  return g;
}

QuasiConcaveProfile sample_profile(const FundamentalFunction& f) {
  QuasiConcaveProfile p;
  p.t = default_profile_grid();
  p.phi.reserve(p.t.size());
  for (double x : p.t) p.phi.push_back(f(x));
  check_quasi_concave(p.t, p.phi);
  p.at_zero = f.at_zero();
  p.limit = f.at_infinity();
  p.plateau = plateau_of(p.t, p.phi, p.limit);
  const std::size_t n = p.t.size();
  p.tail_slope = std::min((p.phi[n - 1] - p.phi[n - 2]) / (p.t[n - 1] - p.t[n - 2]), p.phi[n - 1] / p.t[n - 1]);
  p.exact = [f](double x) { return x > 0 ? f(x) : f.at_zero(); };
  return p;
}

QuasiConcaveProfile profile_from_knots(std::vector<double> t, std::vector<double> phi) {
  check_quasi_concave(t, phi);
  QuasiConcaveProfile p;
  p.t = std::move(t);
  p.phi = std::move(phi);
  const std::size_t n = p.t.size();
  // First and last decade.
  std::size_t lo = 0, hi = n - 1;
  while (lo + 1 < n && p.t[lo + 1] <= 10 * p.t[0]) ++lo;
  while (hi > 0 && p.t[hi - 1] >= 0.1 * p.t[n - 1]) --hi;
  p.at_zero = (lo > 0 && p.phi[lo] - p.phi[0] <= kPlateauTol * p.phi[lo]) ? p.phi[0] : 0.0;
  p.limit = (hi < n - 1 && p.phi[n - 1] - p.phi[hi] <= kPlateauTol * p.phi[n - 1]) ? p.phi[n - 1] : kInf;
  p.plateau = plateau_of(p.t, p.phi, p.limit);
  if (n >= 2 && !std::isfinite(p.limit))
    p.tail_slope = std::min((p.phi[n - 1] - p.phi[n - 2]) / (p.t[n - 1] - p.t[n - 2]), p.phi[n - 1] / p.t[n - 1]);
  return p;
}

QuasiConcaveProfile concave_majorant(const QuasiConcaveProfile& in) {
  check_quasi_concave(in.t, in.phi);
  const std::size_t n = in.t.size();
  std::vector<double> hx{0.0}, hy{in.at_zero};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = in.t[i], y = in.phi[i];
    while (hx.size() >= 2) {
      const std::size_t m = hx.size();
      // Drop the middle point when it lies on or below the chord.
      const double cross = (hx[m - 1] - hx[m - 2]) * (y - hy[m - 2]) - (hy[m - 1] - hy[m - 2]) * (x - hx[m - 2]);
      if (cross < 0) break;
      hx.pop_back();
      hy.pop_back();
    }
    hx.push_back(x);
    hy.push_back(y);
  }
  QuasiConcaveProfile out;
  out.t = in.t;
  out.phi.resize(n);
  std::size_t seg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = in.t[i];
    while (seg + 2 < hx.size() && hx[seg + 1] < x) ++seg;
    if (x == hx[seg + 1]) {
      out.phi[i] = hy[seg + 1];
    } else {
      const double w = (x - hx[seg]) / (hx[seg + 1] - hx[seg]);
      out.phi[i] = std::max(in.phi[i], hy[seg] + w * (hy[seg + 1] - hy[seg]));
    }
  }
  out.at_zero = in.at_zero;
  out.limit = in.limit;
  // An input that is already concave at the knots is its own majorant.
  if (in.exact && out.phi == in.phi) out.exact = in.exact;
  out.plateau = plateau_of(out.t, out.phi, out.limit);
  const std::size_t m = hx.size();
  const double last = m >= 2 ? (hy[m - 1] - hy[m - 2]) / (hx[m - 1] - hx[m - 2]) : 0.0;
  out.tail_slope = std::isfinite(out.limit) && out.phi.back() >= out.limit ? 0.0 : std::min(last, out.phi.back() / out.t.back());
  return out;
}

double regularizing_map(double t, double eps, double c) {
  if (t <= eps) return t;
  if (!std::isfinite(t)) return c;
  const double a = t - eps, b = c - eps;
  return a * b / (a + b) + eps;
}

Regularized regularize(const QuasiConcaveProfile& phi, std::optional<double> eps) {
  if (!chain_is_concave(phi)) throw DomainError("regularize: input is not concave; apply concave_majorant first");
  const double c = phi.plateau;
  if (!std::isfinite(c)) {
    if (eps) throw DomainError("regularize: eps given but c = inf, nothing to regularize");
    return {phi, 1.0, 0.0};
  }
  const double e = eps.value_or(0.5 * c);
  if (!(e > 0) || !(e < c)) throw DomainError("regularize: need 0 < eps < c");
  Regularized r;
  r.eps = e;
  r.phi0.t = phi.t;
  r.phi0.at_zero = phi.at_zero;
  r.phi0.limit = phi.limit;
  r.phi0.plateau = kInf;
  r.phi0.exact = [phi, e, c](double x) { return x > 0 ? phi(regularizing_map(x, e, c)) : phi.at_zero; };
  r.phi0.phi.reserve(phi.t.size());
  r.k = 1.0;
  for (std::size_t i = 0; i < phi.t.size(); ++i) {
    const double v = r.phi0.exact(phi.t[i]);
    r.phi0.phi.push_back(v);
    if (v > 0 && phi.phi[i] > 0) r.k = std::max({r.k, phi.phi[i] / v, v / phi.phi[i]});
  }
  return r;
}

double profile_inverse(const QuasiConcaveProfile& phi, double u) {
  if (u < phi.at_zero) return 0.0;
  if (u >= phi.limit) return kInf;
  auto above = [&](double s) { return phi(s) > u; };
  double lo = phi.t.front(), hi = phi.t.back();
  while (above(lo) && lo > 1e-300) lo *= 1e-3;
  if (above(lo)) return 0.0;
  while (!above(hi)) {
    if (hi > 1e300) return kInf;
    hi *= 1e3;
  }
  return bisect_threshold(above, lo, hi, 1e-15, 4000);
}

ReconstructedOrlicz orlicz_from_fundamental(const QuasiConcaveProfile& phi0) {
  check_quasi_concave(phi0.t, phi0.phi);
  if (!chain_is_concave(phi0)) throw DomainError("orlicz_from_fundamental: phi0 is not concave");
  if (std::isfinite(phi0.plateau))
    throw DomainError("orlicz_from_fundamental: phi0 reaches its limit at finite t (c < inf); regularize first");
  for (std::size_t i = 1; i < phi0.phi.size(); ++i)
    if (!(phi0.phi[i] > phi0.phi[i - 1]))
      throw DomainError("orlicz_from_fundamental: phi0 not increasing at index " + std::to_string(i));

  const double zero_end = ext_recip(phi0.limit);  // psi0 = 0 on [0, 1/d]
  const double b = ext_recip(phi0.at_zero);
  auto eval = [phi0](double t) -> double {
    if (!(t > 0)) return 0.0;
    return ext_recip(profile_inverse(phi0, 1.0 / t));
  };

  // Convexity sample: slopes of consecutive finite samples, starting from (1/d, 0).
  {
    const double lo = std::max(zero_end, 1e-12), hi = std::min(b, 1e12);
    std::vector<double> xs;
    if (zero_end > 0) xs.push_back(zero_end);
    for (double x : log_grid(lo * (1 + 1e-6), hi * (1 - 1e-9), 400)) xs.push_back(x);
    std::vector<double> ys;
    for (double x : xs) ys.push_back(eval(x));
    double prev = 0.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!std::isfinite(ys[i])) break;
      const double s = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
      if (s < prev - 1e-7 * std::max(1.0, std::abs(prev)))
        throw DomainError("orlicz_from_fundamental: reconstructed psi0 fails convexity near t = " + std::to_string(xs[i]));
      prev = s;
    }
  }

  ReconstructedOrlicz r{OrliczFunction::from_evaluator("psi0", eval, b), {}};
  r.knots.push_back({0.0, 0.0});
  if (std::isfinite(zero_end) && zero_end > 0) r.knots.push_back({zero_end, 0.0});
  for (std::size_t i = phi0.t.size(); i-- > 0;) {
    const double x = ext_recip(phi0.phi[i]);
    if (x > r.knots.back().t && std::isfinite(x)) r.knots.push_back({x, 1.0 / phi0.t[i]});
  }
  return r;
}

}  // namespace olab
