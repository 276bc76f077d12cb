#include "orlab/orlicz_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orlab/numerics.hpp"

namespace olab {

struct OrliczFunction::Impl {
  OrliczKind kind;
  std::string label;
  double p = 1.0;     // power exponent
  double coef = 1.0;  // power coefficient or linf cutoff
  double b = kInf;
  std::vector<Knot> knots;   // table
  std::vector<double> slopes;  // table, slopes[i] on [knots[i], knots[i+1]]
  std::function<double(double)> eval;  // evaluator
  std::shared_ptr<const OrliczFunction> source;  // numeric conjugate
  std::vector<double> grid;      // numeric conjugate: v samples
  std::vector<double> grid_psi;  // numeric conjugate: source(v)
};

namespace {

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

double table_eval(const OrliczFunction::Impl& im, double t) {
  const auto& k = im.knots;
  if (t > im.b) return kInf;
  if (t <= 0) return 0.0;
  if (t >= k.back().t) return k.back().v + im.slopes.back() * (t - k.back().t);
  const auto it = std::upper_bound(k.begin(), k.end(), t, [](double x, const Knot& kn) { return x < kn.t; });
  const std::size_t i = std::size_t(it - k.begin()) - 1;
  return k[i].v + im.slopes[i] * (t - k[i].t);
}

double numeric_conj_eval(const OrliczFunction::Impl& im, double u) {
  if (u <= 0) return 0.0;
  const OrliczFunction& src = *im.source;
  if (u > src.conjugate_domain()) return kInf;
  double best = 0.0;
  std::size_t arg = im.grid.size();
  for (std::size_t i = 0; i < im.grid.size(); ++i) {
    if (!std::isfinite(im.grid_psi[i])) break;
    const double val = u * im.grid[i] - im.grid_psi[i];
    if (val > best) {
      best = val;
      arg = i;
    }
  }
  auto objective = [&](double v) {
    const double pv = src(v);
    return std::isfinite(pv) ? -(u * v - pv) : kInf;
  };
  if (arg < im.grid.size()) {
    const double a = arg > 0 ? im.grid[arg - 1] : 0.0;
    const double c = arg + 1 < im.grid.size() ? im.grid[arg + 1] : im.grid[arg];
    const auto g = golden_min(objective, a, c, 1e-15);
    best = std::max(best, -g.fx);
  }
  const double b = src.b_psi();
  if (std::isfinite(b)) best = std::max(best, u * b - src(b));
  for (const auto& kn : src.knots()) best = std::max(best, u * kn.t - kn.v);
  return std::max(best, 0.0);
}

}  // namespace

OrliczFunction OrliczFunction::power(double p, double coef) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("power: exponent must lie in [1, inf)");
  if (!(coef > 0.0) || !std::isfinite(coef)) throw DomainError("power: coefficient must be positive");
  auto im = std::make_shared<Impl>();
  im->kind = OrliczKind::power;
  im->p = p;
  im->coef = coef;
  im->label = (coef == 1.0 ? "" : fmt_double(coef) + "*") + "t^" + fmt_double(p);
  return OrliczFunction(im);
}

OrliczFunction OrliczFunction::linf(double cutoff) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw DomainError("linf: cutoff must be positive");
  auto im = std::make_shared<Impl>();
  im->kind = OrliczKind::linf;
  im->coef = cutoff;
  im->b = cutoff;
  im->label = cutoff == 1.0 ? "linf" : "linf(" + fmt_double(cutoff) + ")";
  return OrliczFunction(im);
}

OrliczFunction OrliczFunction::one_cap_inf() {
  auto im = std::make_shared<Impl>();
  im->kind = OrliczKind::one_cap_inf;
  im->b = 1.0;
  im->label = "one-cap-inf";
  return OrliczFunction(im);
}

OrliczFunction OrliczFunction::one_plus_inf() {
  auto im = std::make_shared<Impl>();
  im->kind = OrliczKind::one_plus_inf;
  im->label = "one-plus-inf";
  return OrliczFunction(im);
}

OrliczFunction OrliczFunction::table(std::vector<Knot> knots, double b_psi) {
  if (knots.empty()) throw SchemaError("table: no knots");
  if (knots.front().t != 0.0) knots.insert(knots.begin(), Knot{0.0, 0.0});
  if (knots.front().v != 0.0) throw SchemaError("table: psi(0) must be 0 (knot 0)");
  if (knots.size() < 2) throw SchemaError("table: need at least one knot beyond 0");
  std::vector<double> slopes;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!std::isfinite(knots[i].t) || !std::isfinite(knots[i].v))
      throw SchemaError("table: non-finite knot at index " + std::to_string(i));
    if (!(knots[i].t > knots[i - 1].t))
      throw SchemaError("table: knot abscissae not strictly increasing at index " + std::to_string(i));
    if (knots[i].v < 0) throw SchemaError("table: negative value at knot index " + std::to_string(i));
    const double m = (knots[i].v - knots[i - 1].v) / (knots[i].t - knots[i - 1].t);
    if (m < -1e-12 * std::max(1.0, std::abs(knots[i].v)))
      throw SchemaError("table: decreasing at knot index " + std::to_string(i));
    if (!slopes.empty() && m < slopes.back() - 1e-12 * std::max(1.0, std::abs(slopes.back())))
      throw SchemaError("table: not convex at knot index " + std::to_string(i - 1));
    slopes.push_back(std::max(m, slopes.empty() ? 0.0 : slopes.back()));
  }
  if (b_psi < knots.back().t) throw SchemaError("table: b_psi lies before the last knot");
  if (!(b_psi > 0)) throw SchemaError("table: b_psi must be positive");
  if (std::isinf(b_psi) && slopes.back() == 0.0) throw SchemaError("table: function is identically zero");
  auto im = std::make_shared<Impl>();
  im->kind = OrliczKind::table;
  im->knots = std::move(knots);
  im->slopes = std::move(slopes);
  im->b = b_psi;
  im->label = "table(" + std::to_string(im->knots.size()) + " knots)";
  return OrliczFunction(im);
}

OrliczFunction OrliczFunction::from_evaluator(std::string label, std::function<double(double)> f, double b_psi) {
  auto im = std::make_shared<Impl>();
  im->kind = OrliczKind::evaluator;
  im->label = std::move(label);
  im->eval = std::move(f);
  im->b = b_psi;
  return OrliczFunction(im);
}

double OrliczFunction::operator()(double t) const {
  const Impl& im = *impl_;
  if (t <= 0) return 0.0;
  switch (im.kind) {
    case OrliczKind::power:
      return im.coef * std::pow(t, im.p);
    case OrliczKind::linf:
      return t <= im.coef ? 0.0 : kInf;
    case OrliczKind::one_cap_inf:
      return t <= 1.0 ? t : kInf;
    case OrliczKind::one_plus_inf:
      return t <= 1.0 ? 0.0 : t - 1.0;
    case OrliczKind::table:
      return table_eval(im, t);
    case OrliczKind::numeric_conjugate:
      return numeric_conj_eval(im, t);
    case OrliczKind::evaluator:
      return t > im.b ? kInf : im.eval(t);
  }
  return kInf;
}

OrliczKind OrliczFunction::kind() const { return impl_->kind; }
std::string OrliczFunction::label() const { return impl_->label; }
double OrliczFunction::exponent() const { return impl_->kind == OrliczKind::power ? impl_->p : 1.0; }
double OrliczFunction::coefficient() const { return impl_->coef; }
double OrliczFunction::b_psi() const { return impl_->b; }
std::span<const Knot> OrliczFunction::knots() const { return impl_->knots; }
const OrliczFunction* OrliczFunction::conjugate_source() const { return impl_->source.get(); }

bool OrliczFunction::is_builtin() const {
  const auto k = impl_->kind;
  return k == OrliczKind::power || k == OrliczKind::linf || k == OrliczKind::one_cap_inf ||
         k == OrliczKind::one_plus_inf;
}

double OrliczFunction::zero_level() const {
  const Impl& im = *impl_;
  switch (im.kind) {
    case OrliczKind::power:
    case OrliczKind::one_cap_inf:
      return 0.0;
    case OrliczKind::linf:
      return im.coef;
    case OrliczKind::one_plus_inf:
      return 1.0;
    case OrliczKind::table: {
      double z = 0.0;
      for (std::size_t i = 0; i < im.slopes.size(); ++i) {
        if (im.slopes[i] > 0) break;
        z = im.knots[i + 1].t;
      }
      if (im.slopes.back() == 0.0) z = im.b;
      return z;
    }
    default: {
      const OrliczFunction& self = *this;
      double hi = std::isfinite(im.b) ? im.b : 1.0;
      if (self(hi) == 0.0) {
        if (std::isfinite(im.b)) return im.b;
        while (self(hi) == 0.0 && hi < 1e300) hi *= 2;
        if (hi >= 1e300) return kInf;
      }
      return bisect_threshold([&](double x) { return self(x) > 0.0; }, 0.0, hi, 1e-15, 200);
    }
  }
}

double OrliczFunction::conjugate_domain() const {
  const Impl& im = *impl_;
  if (std::isfinite(im.b)) return kInf;
  switch (im.kind) {
    case OrliczKind::power:
      return im.p == 1.0 ? im.coef : kInf;
    case OrliczKind::one_plus_inf:
      return 1.0;
    case OrliczKind::table:
      return im.slopes.back();
    case OrliczKind::numeric_conjugate:
      return im.source->b_psi();
    default: {
      const double s1 = (*this)(1e10) / 1e10;
      const double s0 = (*this)(1e9) / 1e9;
      return s1 > 1.5 * s0 ? kInf : s1;
    }
  }
}

double OrliczFunction::right_derivative(double t) const {
  const Impl& im = *impl_;
  if (t >= im.b) return kInf;
  switch (im.kind) {
    case OrliczKind::power:
      if (t <= 0) return im.p == 1.0 ? im.coef : 0.0;
      return im.coef * im.p * std::pow(t, im.p - 1.0);
    case OrliczKind::linf:
      return 0.0;
    case OrliczKind::one_cap_inf:
      return 1.0;
    case OrliczKind::one_plus_inf:
      return t < 1.0 ? 0.0 : 1.0;
    case OrliczKind::table: {
      if (t >= im.knots.back().t) return im.slopes.back();
      const auto it = std::upper_bound(im.knots.begin(), im.knots.end(), t,
                                       [](double x, const Knot& kn) { return x < kn.t; });
      return im.slopes[std::size_t(it - im.knots.begin()) - 1];
    }
    default: {
      const double h = 1e-7 * std::max(t, 1e-7);
      const double up = (*this)(t + h);
      if (!std::isfinite(up)) return kInf;
      return (up - (*this)(t)) / h;
    }
  }
}

double OrliczFunction::left_derivative(double t) const {
  const Impl& im = *impl_;
  if (t <= 0) return 0.0;
  if (t > im.b) return kInf;
  switch (im.kind) {
    case OrliczKind::power:
      return im.coef * im.p * std::pow(t, im.p - 1.0);
    case OrliczKind::linf:
      return 0.0;
    case OrliczKind::one_cap_inf:
      return 1.0;
    case OrliczKind::one_plus_inf:
      return t <= 1.0 ? 0.0 : 1.0;
    case OrliczKind::table: {
      if (t > im.knots.back().t) return im.slopes.back();
      const auto it = std::lower_bound(im.knots.begin(), im.knots.end(), t,
                                       [](const Knot& kn, double x) { return kn.t < x; });
      return im.slopes[std::size_t(it - im.knots.begin()) - 1];
    }
    default: {
      const double h = 1e-7 * std::max(t, 1e-7);
      return ((*this)(t) - (*this)(std::max(0.0, t - h))) / h;
    }
  }
}

double inverse(const OrliczFunction& psi, double t) {
  if (t < 0) throw DomainError("inverse: t must be nonnegative");
  const double b = psi.b_psi();
  if (std::isinf(t)) return b;
  switch (psi.kind()) {
    case OrliczKind::power:
      return std::pow(t / psi.coefficient(), 1.0 / psi.exponent());
    case OrliczKind::linf:
      return psi.coefficient();
    case OrliczKind::one_cap_inf:
      return std::min(t, 1.0);
    case OrliczKind::one_plus_inf:
      return 1.0 + t;
    default:
      break;
  }
  if (std::isfinite(b) && psi(b) <= t) return b;
  if (psi.kind() == OrliczKind::table) {
    // Exact: walk the linear pieces, the last one extended up to b.
    const auto k = psi.knots();
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
      if (k[i + 1].v > t) return std::min(b, k[i].t + (t - k[i].v) * (k[i + 1].t - k[i].t) / (k[i + 1].v - k[i].v));
    const auto& last = k.back();
    const auto& prev = k[k.size() - 2];
    const double slope = (last.v - prev.v) / (last.t - prev.t);
    if (!(slope > 0)) return b;
    return std::min(b, last.t + (t - last.v) / slope);
  }
  double hi = std::isfinite(b) ? b : 1.0;
  if (std::isinf(b)) {
    while (psi(hi) <= t) {
      hi *= 2.0;
      if (hi > 1e300) return kInf;
    }
  }
  // Geometric bracket so tiny levels keep full relative precision.
  double lo = hi;
  for (int it = 0; it < 2100 && psi(lo) > t; ++it) lo *= 0.5;
  if (psi(lo) > t) return 0.0;
  if (lo == hi) return hi;
  return bisect_threshold([&](double x) { return psi(x) > t; }, lo, hi, 1e-16, 400);
}

namespace {

// Exact Legendre transform of a piecewise-linear convex table.
OrliczFunction table_conjugate(const OrliczFunction& psi) {
  const auto kn = psi.knots();
  std::vector<Knot> out{{0.0, 0.0}};
  for (std::size_t i = 1; i < kn.size(); ++i) {
    const double m = (kn[i].v - kn[i - 1].v) / (kn[i].t - kn[i - 1].t);
    if (m <= out.back().t) continue;
    out.push_back({m, std::max(0.0, m * kn[i].t - kn[i].v)});
  }
  const double last_slope = out.back().t;
  const double b = psi.b_psi();
  if (std::isinf(b)) {
    if (out.size() < 2) throw DomainError("conjugate: table conjugate is degenerate");
    return OrliczFunction::table(std::move(out), last_slope);
  }
  // For u past the last slope the supremum sits at v = b.
  const double u = last_slope + 1.0;
  out.push_back({u, u * b - psi(b)});
  return OrliczFunction::table(std::move(out), kInf);
}

}  // namespace

OrliczFunction numeric_conjugate(const OrliczFunction& psi) {
  auto im = std::make_shared<OrliczFunction::Impl>();
  im->kind = OrliczKind::numeric_conjugate;
  im->label = "conj(" + psi.label() + ")";
  im->source = std::make_shared<const OrliczFunction>(psi);
  const double vmax = std::min(1e10, psi.b_psi());
  im->grid = log_grid(1e-10, std::max(vmax, 2e-10), 2000);
  im->grid_psi.reserve(im->grid.size());
  for (double v : im->grid) im->grid_psi.push_back(psi(v));
  im->b = psi.conjugate_domain();
  return OrliczFunction(im);
}

OrliczFunction conjugate(const OrliczFunction& psi) {
  switch (psi.kind()) {
    case OrliczKind::power: {
      const double p = psi.exponent(), c = psi.coefficient();
      if (p == 1.0) return OrliczFunction::linf(c);
      const double q = p / (p - 1.0);
      const double cq = ((p - 1.0) / p) * std::pow(c * p, -1.0 / (p - 1.0));
      return OrliczFunction::power(q, cq);
    }
    case OrliczKind::linf:
      return OrliczFunction::power(1.0, psi.coefficient());
    case OrliczKind::one_cap_inf:
      return OrliczFunction::one_plus_inf();
    case OrliczKind::one_plus_inf:
      return OrliczFunction::one_cap_inf();
    case OrliczKind::table:
      return table_conjugate(psi);
    case OrliczKind::numeric_conjugate:
      // Biconjugate of a closed convex function is the function itself.
      return *psi.conjugate_source();
    case OrliczKind::evaluator:
      return numeric_conjugate(psi);
  }
  return numeric_conjugate(psi);
}

}  // namespace olab
