#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

#include "orlab/crossed.hpp"
#include "orlab/numerics.hpp"
#include "orlab/tracial.hpp"

namespace olab {

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool commutes(const AlgebraElement& b, const AlgebraElement& rho) {
  const double scale = std::max(1e-300, b.op_norm() * rho.op_norm());
  return commutator_norm(b, rho) <= 1e-12 * scale;
}

// Level of a nondecreasing right-continuous F: inf{u > 0 : F(u) > c}.
double level_of(const std::function<double(double)>& F, double c) {
  if (F(1e-300) > c) return 0.0;
  if (!(F(1e300) > c)) return kInf;
  double lo = 1.0, hi = 1.0;
  if (F(1.0) > c) {
    while (F(lo) > c) lo *= 0.25;
    hi = lo * 4.0;
  } else {
    while (F(hi) <= c) hi *= 4.0;
    lo = hi * 0.25;
  }
  return bisect_threshold([&](double u) { return F(u) > c; }, lo, hi, 1e-16, 400);
}

struct ClosedAtom {
  double weight;  // tau-weight
  double r;       // argument scale: u = r e^t
  double sigma;
};

// Joint spectral atoms of |b| and rho for commuting b, rho.
std::vector<ClosedAtom> joint_atoms(const AlgebraElement& b, const DualWeightDensity& dens) {
  std::vector<ClosedAtom> out;
  const auto& blocks = b.algebra()->blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& eig = dens.eigen()[k];
    const std::size_t n = blocks[k].dim;
    std::size_t start = 0;
    while (start < n) {
      std::size_t end = start + 1;
      while (end < n && eig.values[end] - eig.values[start] <= 1e-9 * eig.values[end]) ++end;
      const std::size_t m = end - start;
      CMatrix v(n, m);
      double r = 0;
      for (std::size_t j = 0; j < m; ++j) {
        r += eig.values[start + j];
        for (std::size_t i = 0; i < n; ++i) v(i, j) = eig.vectors(i, start + j);
      }
      r /= static_cast<double>(m);
      const CMatrix sub = v.adjoint() * b.block(k) * v;
      for (double s : singular_values(sub)) out.push_back({blocks[k].weight, r, s});
      start = end;
    }
  }
  return out;
}

std::vector<ClosedAtom> plain_atoms(const AlgebraElement& b) {
  std::vector<ClosedAtom> out;
  for (const auto& a : singular_atoms(b)) out.push_back({a.weight, 1.0, a.value});
  return out;
}

bool phases_aligned(const std::vector<cplx>& z) {
  cplx ref = 0;
  for (const auto& v : z) {
    if (std::abs(v) == 0) continue;
    const cplx u = v / std::abs(v);
    if (ref == cplx(0)) {
      ref = u;
    } else if (std::abs(u - ref) > 1e-12) {
      return false;
    }
  }
  return true;
}

enum class Path { zero, single, diagonal, grid };

struct Classification {
  Path path;
  std::string note;
};

Classification classify(const std::vector<Term>& terms, const DualWeightDensity& dens) {
  if (terms.empty()) return {Path::zero, ""};
  if (terms.size() == 1) {
    const auto& t = terms.front();
    if (t.argument == Argument::exp_t || commutes(t.base, dens.rho())) return {Path::single, ""};
    return {Path::grid, "base does not commute with rho"};
  }
  bool any_density = false;
  for (const auto& t : terms) {
    if (!t.base.is_diagonal()) return {Path::grid, "several terms with non-diagonal bases"};
    any_density |= t.argument == Argument::density;
  }
  if (any_density && !dens.rho().is_diagonal()) return {Path::grid, "several terms with non-diagonal rho"};
  const auto& blocks = dens.algebra()->blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t j = 0; j < blocks[k].dim; ++j) {
      std::vector<cplx> z;
      for (const auto& t : terms) z.push_back(t.base.block(k)(j, j));
      if (!phases_aligned(z)) return {Path::grid, "term coefficients with different phases"};
    }
  return {Path::diagonal, ""};
}

double closed_distribution_single(const Term& term, const DualWeightDensity& dens, double s) {
  const auto atoms = term.argument == Argument::exp_t ? plain_atoms(term.base) : joint_atoms(term.base, dens);
  double total = 0;
  for (const auto& a : atoms) {
    if (a.sigma == 0) continue;
    const double u0 = term.profile.upper_level(s / a.sigma);
    if (u0 == 0) return kInf;
    if (std::isinf(u0)) continue;
    total += a.weight * a.r / u0;
  }
  return total;
}

double closed_distribution_diagonal(const std::vector<Term>& terms, const DualWeightDensity& dens, double s) {
  const auto& blocks = dens.algebra()->blocks();
  double total = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (std::size_t j = 0; j < blocks[k].dim; ++j) {
      const double rj = dens.rho().block(k)(j, j).real();
      std::vector<std::pair<double, const Term*>> parts;
      for (const auto& t : terms) {
        const double c = std::abs(t.base.block(k)(j, j));
        if (c > 0) parts.push_back({c, &t});
      }
      if (parts.empty()) continue;
      auto F = [&](double u) {
        double v = 0;
        for (const auto& [c, t] : parts) v += c * t->profile(t->argument == Argument::density ? rj * u : u);
        return v;
      };
      const double u0 = level_of(F, s);
      if (u0 == 0) return kInf;
      if (std::isinf(u0)) continue;
      total += blocks[k].weight / u0;
    }
  return total;
}

double first_positive_exponent(const std::vector<Term>& terms, bool at_zero) {
  double e = at_zero ? kInf : -kInf;
  for (const auto& t : terms) {
    const double x = at_zero ? t.profile.exponent_zero() : t.profile.exponent_infinity();
    e = at_zero ? std::min(e, x) : std::max(e, x);
  }
  return std::isfinite(e) ? e : 0.0;
}

AlgebraElement eval_term(const Term& term, const DualWeightDensity& dens, double t) {
  if (term.argument == Argument::exp_t) {
    const double g = term.profile(std::exp(t));
    return term.base * cplx(g);
  }
  const auto& g = term.profile;
  switch (term.placement) {
    case Placement::right:
      return term.base * dens.apply([&](double u) { return g(u); }, t);
    case Placement::left:
      return dens.apply([&](double u) { return g(u); }, t) * term.base;
    case Placement::sandwich: {
      const auto root = dens.apply([&](double u) { return std::sqrt(g(u)); }, t);
      return root * term.base * root;
    }
  }
  return term.base;
}

// Measure of {t outside the grid : sigma e^{e (t - t_edge)} > s} on one side.
double tail_measure(double sigma, double s, double exponent, double t_edge_mid, double boundary, bool right) {
  if (sigma == 0) return 0.0;
  if (right) {
    if (exponent > 0) {
      const double ts = t_edge_mid + std::log(s / sigma) / exponent;
      return s == 0 ? std::exp(-boundary) : std::exp(-std::max(boundary, ts));
    }
    if (exponent == 0) return sigma > s ? std::exp(-boundary) : 0.0;
    if (s == 0) return std::exp(-boundary);
    const double ts = t_edge_mid + std::log(s / sigma) / exponent;
    return ts > boundary ? std::exp(-boundary) - std::exp(-ts) : 0.0;
  }
  if (exponent > 0) {
    if (s == 0) return kInf;
    const double ts = t_edge_mid + std::log(s / sigma) / exponent;
    return ts < boundary ? std::exp(-ts) - std::exp(-boundary) : 0.0;
  }
  if (exponent == 0) return sigma > s ? kInf : 0.0;
  return kInf;
}

}  // namespace

// ---------------------------------------------------------------- profiles

Profile power_profile(double a) {
  if (!(a >= 0 && a <= 1)) throw DomainError("power_profile: exponent must lie in [0, 1]");
  if (a == 0) return constant_profile(1.0);
  FundamentalFunction f(FundamentalKind::user, "u^" + fmt17(a), [a](double u) { return std::pow(u, a); });
  return f.with_limits(0.0, kInf, a, a).with_upper_level([a](double c) {
    return c <= 0 ? 0.0 : std::pow(c, 1.0 / a);
  });
}

Profile constant_profile(double c) {
  if (!(c >= 0)) throw DomainError("constant_profile: negative constant");
  FundamentalFunction f(FundamentalKind::user, "const(" + fmt17(c) + ")", [c](double) { return c; });
  return f.with_limits(c, c, 0.0, 0.0).with_upper_level([c](double y) { return y < c ? 0.0 : kInf; });
}

Profile min_one_profile() {
  FundamentalFunction f(FundamentalKind::user, "min(1,u)", [](double u) { return std::min(1.0, u); });
  return f.with_limits(0.0, 1.0, 1.0, 0.0).with_upper_level([](double c) {
    if (c < 0) return 0.0;
    return c >= 1 ? kInf : c;
  });
}

Profile sqrt_profile(const Profile& g) {
  FundamentalFunction f(FundamentalKind::user, "sqrt(" + g.label() + ")", [g](double u) { return std::sqrt(g(u)); });
  return f.with_limits(std::sqrt(g.at_zero()), std::sqrt(g.at_infinity()), 0.5 * g.exponent_zero(),
                       0.5 * g.exponent_infinity())
      .with_upper_level([g](double c) { return g.upper_level(c < 0 ? c : c * c); });
}

Profile scaled_profile(const Profile& g, double r) {
  if (!(r > 0) || !std::isfinite(r)) throw DomainError("scaled_profile: scale must be positive");
  if (r == 1) return g;
  FundamentalFunction f(FundamentalKind::user, g.label() + "[u*" + fmt17(r) + "]",
                        [g, r](double u) { return g(r * u); });
  return f.with_limits(g.at_zero(), g.at_infinity(), g.exponent_zero(), g.exponent_infinity())
      .with_upper_level([g, r](double c) { return g.upper_level(c) / r; });
}

// ---------------------------------------------------------------- density

DualWeightDensity::DualWeightDensity(AlgebraElement rho) : rho_(std::move(rho)) {
  if (!rho_.is_hermitian(1e-12)) throw DomainError("density must be Hermitian");
  for (const auto& blk : rho_.blocks()) {
    eig_.push_back(jacobi_eigen(blk));
    if (!(eig_.back().values.front() > 0)) throw DomainError("density must be positive definite");
  }
}

DualWeightDensity DualWeightDensity::tracial(const AlgebraPtr& alg) {
  return DualWeightDensity(AlgebraElement::identity(alg) * cplx(1.0 / alg->total_measure()));
}

bool DualWeightDensity::is_tracial(double tol) const {
  double lo = kInf, hi = 0;
  for (const auto& e : eig_) {
    lo = std::min(lo, e.values.front());
    hi = std::max(hi, e.values.back());
  }
  return hi - lo <= tol * hi;
}

AlgebraElement DualWeightDensity::apply(const std::function<double(double)>& f, double t) const {
  const double scale = std::exp(t);
  std::vector<CMatrix> blocks;
  for (const auto& e : eig_) blocks.push_back(e.apply([&](double r) { return f(r * scale); }));
  return AlgebraElement(algebra(), std::move(blocks));
}

DensityPtr make_density(AlgebraElement rho) { return std::make_shared<const DualWeightDensity>(std::move(rho)); }

DensityPtr tracial_density(const AlgebraPtr& alg) {
  return std::make_shared<const DualWeightDensity>(DualWeightDensity::tracial(alg));
}

// ---------------------------------------------------------------- grid

double GridSpec::cell_weight(std::size_t i) const { return std::exp(-left(i)) * -std::expm1(-step()); }

double grid_quadrature_bound(const GridSpec& g, double lambda) {
  if (std::isinf(lambda)) return kInf;
  return std::expm1(0.5 * g.step()) * lambda + 1e-12 * (1 + lambda);
}

double GridSpectrum::distribution(double s) const {
  const auto it = std::partition_point(sigma.begin(), sigma.end(), [s](double v) { return v > s; });
  const std::size_t n = static_cast<std::size_t>(it - sigma.begin());
  double total = n == 0 ? 0.0 : cumulative[n - 1];
  for (const auto& a : right_edge)
    total += a.weight * tail_measure(a.sigma, s, right_exponent, right_mid, t_max, true);
  for (const auto& a : left_edge) {
    const double m = tail_measure(a.sigma, s, left_exponent, left_mid, t_min, false);
    if (std::isinf(m)) return kInf;
    total += a.weight * m;
  }
  return total;
}

// ---------------------------------------------------------------- elements

struct CrossedElement::Cache {
  std::once_flag once;
  GridSpectrum spectrum;
  std::once_flag grid_once;
  std::shared_ptr<const GridData> grid;
};

CrossedElement::CrossedElement(DensityPtr density, std::variant<std::vector<Term>, GridData> rep)
    : density_(std::move(density)), rep_(std::move(rep)), cache_(std::make_shared<Cache>()) {}

CrossedElement CrossedElement::separable(DensityPtr density, std::vector<Term> terms) {
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!(t.base.algebra() == density->algebra() || *t.base.algebra() == *density->algebra()))
      throw DomainError("term base lives in a different algebra");
    auto same = std::find_if(merged.begin(), merged.end(), [&](const Term& m) {
      return m.profile.label() == t.profile.label() && m.argument == t.argument &&
             (m.placement == t.placement || m.argument == Argument::exp_t);
    });
    if (same != merged.end()) {
      same->base += t.base;
    } else {
      merged.push_back(std::move(t));
    }
  }
  for (const auto& t : merged) {
    const auto pts = log_grid(1e-12, 1e12, 97);
    double prev = t.profile(pts.front());
    for (double u : pts) {
      const double v = t.profile(u);
      if (v < prev * (1 - 1e-12)) throw DomainError("profile " + t.profile.label() + " is not nondecreasing");
      prev = v;
    }
  }
  return CrossedElement(std::move(density), std::move(merged));
}

CrossedElement CrossedElement::grid(DensityPtr density, GridData data) {
  if (data.cells.size() != data.spec.cells) throw DomainError("grid: cell count does not match the grid spec");
  for (const auto& c : data.cells)
    if (!(*c.algebra() == *density->algebra())) throw DomainError("grid: cell does not conform to the algebra");
  return CrossedElement(std::move(density), std::move(data));
}

CrossedElement CrossedElement::sample(DensityPtr density, const GridSpec& spec,
                                      const std::function<AlgebraElement(double)>& f, double left_exponent,
                                      double right_exponent) {
  GridData g{spec, {}, left_exponent, right_exponent};
  g.cells.reserve(spec.cells);
  for (std::size_t i = 0; i < spec.cells; ++i) g.cells.push_back(f(spec.mid(i)));
  return grid(std::move(density), std::move(g));
}

CrossedElement CrossedElement::zero(DensityPtr density) { return separable(std::move(density), {}); }

const std::vector<Term>& CrossedElement::terms() const {
  if (!is_separable()) throw DomainError("terms() on a grid element");
  return std::get<std::vector<Term>>(rep_);
}

const GridData& CrossedElement::grid_data() const {
  if (is_separable()) throw DomainError("grid_data() on a separable element");
  return std::get<GridData>(rep_);
}

bool CrossedElement::closed_form() const {
  return is_separable() && classify(terms(), *density_).path != Path::grid;
}

std::string CrossedElement::evaluation_note() const {
  if (!is_separable()) return "grid element";
  return classify(terms(), *density_).note;
}

AlgebraElement CrossedElement::at(double t) const {
  if (is_separable()) {
    AlgebraElement sum = AlgebraElement::zero(algebra());
    for (const auto& term : terms()) sum += eval_term(term, *density_, t);
    return sum;
  }
  const auto& g = grid_data();
  if (t < g.spec.t_min) return g.cells.front() * cplx(std::exp(g.left_exponent * (t - g.spec.mid(0))));
  if (t >= g.spec.t_max)
    return g.cells.back() * cplx(std::exp(g.right_exponent * (t - g.spec.mid(g.spec.cells - 1))));
  const auto i = std::min(g.spec.cells - 1, static_cast<std::size_t>((t - g.spec.t_min) / g.spec.step()));
  return g.cells[i];
}

CrossedElement CrossedElement::to_grid(const GridSpec& spec) const {
  if (!is_separable()) {
    if (grid_data().spec == spec) return *this;
    const auto& g = grid_data();
    return sample(density_, spec, [this](double t) { return at(t); }, g.left_exponent, g.right_exponent);
  }
  const auto& ts = terms();
  return sample(density_, spec, [this](double t) { return at(t); }, first_positive_exponent(ts, true),
                first_positive_exponent(ts, false));
}

const GridSpectrum& CrossedElement::grid_spectrum() const {
  std::call_once(cache_->once, [this] {
    const CrossedElement g = is_separable() ? to_grid() : *this;
    const auto& data = g.grid_data();
    const auto wv = grid_weighted_values(data);
    GridSpectrum sp;
    sp.sigma = wv.sigma;
    sp.cumulative.resize(wv.measure.size());
    double acc = 0;
    for (std::size_t i = 0; i < wv.measure.size(); ++i) sp.cumulative[i] = acc += wv.measure[i];
    for (const auto& a : singular_atoms(data.cells.front())) sp.left_edge.push_back({a.value, a.weight});
    for (const auto& a : singular_atoms(data.cells.back())) sp.right_edge.push_back({a.value, a.weight});
    sp.left_mid = data.spec.mid(0);
    sp.right_mid = data.spec.mid(data.spec.cells - 1);
    sp.t_min = data.spec.t_min;
    sp.t_max = data.spec.t_max;
    sp.left_exponent = data.left_exponent;
    sp.right_exponent = data.right_exponent;
    cache_->spectrum = std::move(sp);
  });
  return cache_->spectrum;
}

CrossedElement CrossedElement::adjoint() const {
  if (is_separable()) {
    std::vector<Term> out;
    for (const auto& t : terms()) {
      Term a = t;
      a.base = t.base.adjoint();
      if (t.placement == Placement::right) a.placement = Placement::left;
      else if (t.placement == Placement::left) a.placement = Placement::right;
      out.push_back(std::move(a));
    }
    return separable(density_, std::move(out));
  }
  GridData g = grid_data();
  for (auto& c : g.cells) c = c.adjoint();
  return grid(density_, std::move(g));
}

CrossedElement& CrossedElement::operator*=(cplx s) {
  if (is_separable()) {
    for (auto& t : std::get<std::vector<Term>>(rep_)) t.base *= s;
  } else {
    for (auto& c : std::get<GridData>(rep_).cells) c *= s;
  }
  cache_ = std::make_shared<Cache>();
  return *this;
}

CrossedElement operator+(const CrossedElement& x, const CrossedElement& y) {
  if (x.is_separable() && y.is_separable()) {
    auto terms = x.terms();
    terms.insert(terms.end(), y.terms().begin(), y.terms().end());
    return CrossedElement::separable(x.density(), std::move(terms));
  }
  const GridSpec spec = x.is_separable() ? y.grid_data().spec : x.grid_data().spec;
  const auto gx = x.to_grid(spec), gy = y.to_grid(spec);
  GridData out = gx.grid_data();
  for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i] += gy.grid_data().cells[i];
  out.left_exponent = std::min(gx.grid_data().left_exponent, gy.grid_data().left_exponent);
  out.right_exponent = std::max(gx.grid_data().right_exponent, gy.grid_data().right_exponent);
  return CrossedElement::grid(x.density(), std::move(out));
}

CrossedElement operator*(const CrossedElement& x, const CrossedElement& y) {
  const GridSpec spec = !x.is_separable() ? x.grid_data().spec : !y.is_separable() ? y.grid_data().spec : GridSpec{};
  const auto gx = x.to_grid(spec), gy = y.to_grid(spec);
  GridData out = gx.grid_data();
  for (std::size_t i = 0; i < out.cells.size(); ++i) out.cells[i] = out.cells[i] * gy.grid_data().cells[i];
  out.left_exponent = gx.grid_data().left_exponent + gy.grid_data().left_exponent;
  out.right_exponent = gx.grid_data().right_exponent + gy.grid_data().right_exponent;
  return CrossedElement::grid(x.density(), std::move(out));
}

CrossedElement h_function(DensityPtr density, const Profile& f) {
  const auto alg = density->algebra();
  return CrossedElement::separable(std::move(density),
                                   {Term{AlgebraElement::identity(alg), f, Argument::density, Placement::right}});
}

CrossedElement constant_element(DensityPtr density, const AlgebraElement& b) {
  return CrossedElement::separable(std::move(density), {Term{b, constant_profile(1.0), Argument::exp_t}});
}

// ---------------------------------------------------------------- distribution, mu, theta, trace

double distribution_crossed(const CrossedElement& x, double s) {
  if (!(s >= 0)) throw DomainError("distribution_crossed: s must be nonnegative");
  if (x.is_separable()) {
    const auto cls = classify(x.terms(), *x.density());
    switch (cls.path) {
      case Path::zero:
        return 0.0;
      case Path::single:
        return closed_distribution_single(x.terms().front(), *x.density(), s);
      case Path::diagonal:
        return closed_distribution_diagonal(x.terms(), *x.density(), s);
      case Path::grid:
        break;
    }
  }
  return x.grid_spectrum().distribution(s);
}

double mu_crossed(const CrossedElement& x, double t) {
  if (!(t > 0)) throw DomainError("mu_crossed: t must be positive");
  auto lam = [&](double s) { return distribution_crossed(x, s); };
  if (x.is_separable() && x.terms().empty()) return 0.0;
  if (lam(0.0) <= t) return 0.0;
  double guess = x.at(0.0).op_norm();
  if (!(guess > 0) || !std::isfinite(guess)) guess = 1.0;
  double lo, hi;
  if (lam(guess) <= t) {
    hi = guess;
    lo = guess * 0.5;
    while (lam(lo) <= t) {
      hi = lo;
      lo *= 0.5;
      if (lo < 1e-300) return 0.0;
    }
  } else {
    lo = guess;
    hi = guess * 2.0;
    while (lam(hi) > t) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) throw DomainError("mu_crossed: element is unbounded at this level");
    }
  }
  return bisect_threshold([&](double s) { return lam(s) <= t; }, lo, hi, kNormRelTol, 4000);
}

CrossedElement theta(const CrossedElement& x, double s) {
  if (s == 0) return x;
  if (x.is_separable()) {
    std::vector<Term> out;
    for (const auto& t : x.terms()) {
      Term m = t;
      m.profile = scaled_profile(t.profile, std::exp(-s));
      out.push_back(std::move(m));
    }
    return CrossedElement::separable(x.density(), std::move(out));
  }
  const auto& g = x.grid_data();
  const double k_real = s / g.spec.step();
  const double k_round = std::round(k_real);
  if (std::abs(k_real - k_round) > 1e-9 * std::max(1.0, std::abs(k_real)))
    throw DomainError("theta: shift is not a multiple of the grid step");
  const auto k = static_cast<long>(k_round);
  const auto n = static_cast<long>(g.spec.cells);
  GridData out{g.spec, {}, g.left_exponent, g.right_exponent};
  out.cells.reserve(g.cells.size());
  for (long i = 0; i < n; ++i) {
    const long j = i - k;
    if (j >= 0 && j < n) {
      out.cells.push_back(g.cells[static_cast<std::size_t>(j)]);
    } else {
      out.cells.push_back(x.at(g.spec.mid(static_cast<std::size_t>(i)) - s));
    }
  }
  return CrossedElement::grid(x.density(), std::move(out));
}

cplx tau_A(const CrossedElement& x) {
  const CrossedElement gx = x.is_separable() ? x.to_grid() : x;
  const auto& g = gx.grid_data();
  cplx sum = 0;
  for (std::size_t i = 0; i < g.spec.cells; ++i) sum += g.spec.cell_weight(i) * g.cells[i].trace();
  // Tails continue the midpoint rule over virtual cells, so shifts by whole cells scale the sum exactly.
  const double step = g.spec.step();
  const cplx right = g.cells.back().trace();
  if (std::abs(right) > 0) {
    if (!(g.right_exponent < 1)) throw DomainError("tau_A diverges at +inf");
    const double q = std::exp((g.right_exponent - 1) * step);
    sum += g.spec.cell_weight(g.spec.cells - 1) * right * (q / (1 - q));
  }
  const cplx left = g.cells.front().trace();
  if (std::abs(left) > 0) {
    if (!(g.left_exponent > 1)) throw DomainError("tau_A diverges at -inf");
    const double q = std::exp((1 - g.left_exponent) * step);
    sum += g.spec.cell_weight(0) * left * (q / (1 - q));
  }
  return sum;
}

}  // namespace olab
