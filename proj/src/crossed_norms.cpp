#include <algorithm>
#include <cmath>
#include <set>

#include "orlab/crossed.hpp"
#include "orlab/numerics.hpp"
#include "orlab/random_instances.hpp"
#include "orlab/tracial.hpp"

namespace olab {

namespace {

AlgebraElement rho_half(const DualWeightDensity& d) {
  return d.apply([](double r) { return std::sqrt(r); }, 0.0);
}

double trace_norm(const AlgebraElement& a) {
  double s = 0;
  for (const auto& at : singular_atoms(a)) s += at.weight * at.value;
  return s;
}

double real_trace_sqrt(const AlgebraElement& a) { return std::sqrt(std::max(0.0, a.trace().real())); }

struct SvdAlgebra {
  std::vector<SvdFactors> blocks;
  AlgebraPtr alg;

  // U g(Sigma) V* blockwise.
  AlgebraElement rebuild(const std::function<double(double)>& g) const {
    std::vector<CMatrix> out;
    for (const auto& f : blocks) {
      const std::size_t n = f.sigma.size();
      CMatrix m(f.u.rows(), f.v.rows());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
          cplx acc = 0;
          for (std::size_t k = 0; k < n; ++k) acc += f.u(i, k) * g(f.sigma[k]) * std::conj(f.v(j, k));
          m(i, j) = acc;
        }
      out.push_back(std::move(m));
    }
    return AlgebraElement(alg, std::move(out));
  }
};

SvdAlgebra svd_of(const AlgebraElement& a) {
  SvdAlgebra s{{}, a.algebra()};
  for (const auto& b : a.blocks()) s.blocks.push_back(svd(b));
  return s;
}

SplitCosts costs_from(const DualWeightDensity& dens, const SvdAlgebra& f, ThresholdPair th) {
  const double c = th.low, C = th.high;
  const auto f0 = f.rebuild([c](double s) { return std::min(s, c); });
  const auto band = f.rebuild([c, C](double s) { return std::min(s, C) - std::min(s, c); }) * cplx(0.5);
  const auto c0 = f.rebuild([C](double s) { return std::max(0.0, s - C); });
  return split_costs(dens, c0, band, band, f0);
}

double max_sigma(const SvdAlgebra& f) {
  double m = 0;
  for (const auto& b : f.blocks)
    for (double s : b.sigma) m = std::max(m, s);
  return m;
}

}  // namespace

double quasinorm_mu1(const CrossedElement& x) { return mu_crossed(x, 1.0); }

double quasinorm_excess(const CrossedElement& x, int points) {
  const double m1 = quasinorm_mu1(x);
  double worst = -kInf;
  for (double t : log_grid(1e-4, 1.0, static_cast<std::size_t>(points))) {
    const double v = t * mu_crossed(x, t);
    worst = std::max(worst, m1 == 0 ? (v > 0 ? kInf : 0.0) : v / m1 - 1);
  }
  return worst;
}

double norm_1capinf(const DualWeightDensity& density, const AlgebraElement& b) {
  const auto& rho = density.rho();
  const auto rh = rho_half(density);
  const double n1 = trace_norm(rh * b * rh);
  const double n2r = real_trace_sqrt(b.adjoint() * rho * b);
  const double n2l = real_trace_sqrt(b * rho * b.adjoint());
  return std::max({n1, n2r, n2l, b.op_norm()});
}

// ---------------------------------------------------------------- X_{1+inf}

IotaSum iota_1(DensityPtr density, const AlgebraElement& c0) {
  const auto z = AlgebraElement::zero(density->algebra());
  return {std::move(density), c0, z, z, z};
}
IotaSum iota_2r(DensityPtr density, const AlgebraElement& d0) {
  const auto z = AlgebraElement::zero(density->algebra());
  return {std::move(density), z, d0, z, z};
}
IotaSum iota_2l(DensityPtr density, const AlgebraElement& e0) {
  const auto z = AlgebraElement::zero(density->algebra());
  return {std::move(density), z, z, e0, z};
}
IotaSum iota_inf(DensityPtr density, const AlgebraElement& f0) {
  const auto z = AlgebraElement::zero(density->algebra());
  return {std::move(density), z, z, z, f0};
}

IotaSum& IotaSum::operator+=(const IotaSum& o) {
  c0 += o.c0;
  d0 += o.d0;
  e0 += o.e0;
  f0 += o.f0;
  return *this;
}

CrossedElement IotaSum::to_crossed() const {
  return CrossedElement::separable(density,
                                   {Term{coefficient(), min_one_profile(), Argument::density, Placement::sandwich}});
}

double SplitCosts::weighted(double t) const { return l1 + std::sqrt(t) * (l2r + l2l) + t * linf; }

SplitCosts split_costs(const DualWeightDensity& density, const AlgebraElement& c0, const AlgebraElement& d0,
                       const AlgebraElement& e0, const AlgebraElement& f0) {
  const auto& rho = density.rho();
  const auto rh = rho_half(density);
  return {trace_norm(rh * c0 * rh), real_trace_sqrt(d0.adjoint() * rho * d0),
          real_trace_sqrt(e0 * rho * e0.adjoint()), f0.op_norm()};
}

SplitCosts threshold_costs(const DualWeightDensity& density, const AlgebraElement& a, ThresholdPair th) {
  return costs_from(density, svd_of(a), th);
}

DecompositionFamily::DecompositionFamily(DensityPtr density, AlgebraElement a)
    : density_(std::move(density)), a_(std::move(a)) {
  const auto f = svd_of(a_);
  std::set<double> lv{0.0, 1.0};
  for (const auto& b : f.blocks)
    for (double s : b.sigma)
      if (s > 0) lv.insert(s);
  std::vector<double> base(lv.begin(), lv.end());
  std::vector<double> levels = base;
  for (std::size_t i = 1; i + 1 < base.size(); ++i) levels.push_back(std::sqrt(base[i] * base[i + 1]));
  std::sort(levels.begin(), levels.end());
  for (std::size_t i = 0; i < levels.size(); ++i)
    for (std::size_t j = i; j < levels.size(); ++j) {
      thresholds_.push_back({levels[i], levels[j]});
      members_.push_back(costs_from(*density_, f, thresholds_.back()));
    }
}

double DecompositionFamily::value(double t) const {
  double best = kInf;
  for (const auto& m : members_) best = std::min(best, m.weighted(t));
  for (const auto& m : extra_) best = std::min(best, m.weighted(t));
  return best;
}

void DecompositionFamily::refine(double t) {
  const auto f = svd_of(a_);
  const double top = max_sigma(f);
  std::size_t arg = 0;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i].weighted(t) < members_[arg].weighted(t)) arg = i;
  ThresholdPair th = thresholds_[arg];
  double best = members_[arg].weighted(t);
  for (int sweep = 0; sweep < 8; ++sweep) {
    const double before = best;
    if (th.high > 0) {
      const auto g = golden_min(
          [&](double c) { return costs_from(*density_, f, {c, th.high}).weighted(t); }, 0.0, th.high, 1e-12 * top);
      if (g.fx < best) {
        best = g.fx;
        th.low = g.x;
      }
    }
    if (top > th.low) {
      const auto g = golden_min(
          [&](double C) { return costs_from(*density_, f, {th.low, C}).weighted(t); }, th.low, top, 1e-12 * top);
      if (g.fx < best) {
        best = g.fx;
        th.high = g.x;
      }
    }
    if (!(best < before * (1 - 1e-14))) break;
  }
  thresholds_.push_back(th);
  members_.push_back(costs_from(*density_, f, th));
}

double norm_1plusinf_lower(const CrossedElement& x) {
  double best = 0;
  for (double eps : log_grid(1e-6, 4.0, 200)) best = std::max(best, 0.25 * eps * mu_crossed(x, eps));
  return best;
}

NormBounds norm_1plusinf(const IotaSum& x) {
  DecompositionFamily fam(x.density, x.coefficient());
  fam.add(split_costs(*x.density, x.c0, x.d0, x.e0, x.f0));
  fam.refine(1.0);
  return {fam.value(1.0), norm_1plusinf_lower(x.to_crossed()), fam.size()};
}

// ---------------------------------------------------------------- duality and probes

cplx l1_trace(const CrossedElement& x, const GridSpec& spec) {
  const auto g = x.to_grid(spec);
  const auto& d = g.grid_data();
  cplx sum = 0;
  int count = 0;
  for (std::size_t i = 0; i < d.spec.cells; ++i) {
    const double t = d.spec.mid(i);
    if (std::abs(t) > 1.0) continue;
    sum += d.cells[i].trace() * std::exp(-t);
    ++count;
  }
  if (count == 0) throw DomainError("l1_trace: grid does not cover t in [-1, 1]");
  return sum / static_cast<double>(count);
}

PairingReport pairing_duality(const CrossedElement& a, const CrossedElement& b, const OrliczFunction& psi) {
  const auto ma = membership(a, Space::with_psi(SpaceKind::left_upper, psi));
  if (ma.verdict != Verdict::member)
    throw DomainError(std::string("pairing: a is not in the left upper space (") + verdict_name(ma.verdict) + ")");
  const auto mb = membership(b, Space::with_psi(SpaceKind::right_lower, conjugate(psi)));
  if (mb.verdict != Verdict::member)
    throw DomainError(std::string("pairing: b is not in the right lower space (") + verdict_name(mb.verdict) + ")");
  const auto ba = b * a;
  const auto l1 = homogeneity(ba, 1.0);
  PairingReport r{l1_trace(ba), 2 * quasinorm_mu1(b) * quasinorm_mu1(a), l1.max_deviation, false};
  r.ok = l1.verdict == Verdict::member && std::abs(r.value) <= r.bound * (1 + 1e-9) + 1e-300;
  return r;
}

ProbeReport probe_triple_norm(const AlgebraElement& m, const DensityPtr& density, const OrliczFunction& psi,
                              int samples, std::uint64_t seed) {
  const auto a = embed_luxemburg(density, m, psi);
  const double mu1 = quasinorm_mu1(a);
  const auto root = sqrt_profile(fundamental_orl(conjugate(psi)));
  const auto rh = rho_half(*density);
  const auto core = rh * m * rh;
  const bool tracial = density->is_tracial();
  double sup = 0;
  for (int i = 0; i < samples; ++i) {
    InstanceRng rng(seed, static_cast<std::uint64_t>(i));
    auto draw = [&] {
      auto c = random_element(rng, density->algebra());
      if (tracial) return c;
      // Keep c in the commutant of rho so mu_1(b) has a closed form.
      std::vector<CMatrix> blocks;
      for (const auto& e : density->eigen()) {
        std::vector<cplx> diag;
        for (std::size_t j = 0; j < e.values.size(); ++j) diag.push_back({rng.normal(), rng.normal()});
        blocks.push_back(e.vectors * CMatrix::diagonal(std::span<const cplx>(diag)) * e.vectors.adjoint());
      }
      return AlgebraElement(density->algebra(), std::move(blocks));
    };
    const auto c0 = draw();
    const auto c1 = draw();
    const auto b0 = CrossedElement::separable(density, {Term{c0, root, Argument::density, Placement::right}});
    const auto b1 = CrossedElement::separable(density, {Term{c1, root, Argument::density, Placement::right}});
    // b0 a b1* = c0 h^{1/2} m h^{1/2} c1*, whose L^1 coefficient is c0 rho^{1/2} m rho^{1/2} c1*.
    const double num = std::abs((c0 * core * c1.adjoint()).trace());
    const double den = quasinorm_mu1(b0) * quasinorm_mu1(b1);
    if (den > 0) sup = std::max(sup, num / den);
  }
  return {sup, mu1, sup <= 3 * mu1 * (1 + 1e-12), sup <= mu1 * (1 + 1e-12)};
}

NormabilityReport normability_norm(const CrossedElement& x, const OrliczFunction& psi) {
  const auto boyd = boyd_normability(psi);
  if (!boyd.normable) throw DomainError("normability_norm: psi is not Boyd-normable");
  NormabilityReport r{0.0, quasinorm_mu1(x), boyd.constant, true, true, -kInf};
  if (r.mu1 == 0) {
    r.worst_dilation_excess = 0;
    return r;
  }
  const double m = r.mu1;
  // int_0^inf min(lambda_s, 1) ds = mu_1 + int_{mu_1}^inf lambda_s ds, with s = mu_1 e^y.
  auto integrand = [&](double y) { return distribution_crossed(x, m * std::exp(y)) * m * std::exp(y); };
  constexpr double kSpan = 40.0;
  double body = adaptive_simpson(integrand, 0.0, kSpan, 1e-11 * m);
  const double i1 = integrand(kSpan - 1), i2 = integrand(kSpan);
  double tail = 0;
  if (i2 > 0) {
    const double decay = std::log(i1 / i2);
    tail = decay > 0 ? i2 / decay : kInf;
  }
  r.integral = m + body + tail;
  r.lower_ok = m <= r.integral * (1 + 1e-9);
  r.upper_ok = r.integral <= boyd.constant * m * (1 + 1e-9);
  const auto conj = conjugate(psi);
  for (double t : log_grid(1e-4, 1.0, 25)) {
    const double k = dilation(conj, t);
    r.worst_dilation_excess = std::max(r.worst_dilation_excess, t * mu_crossed(x, t) / (k * m) - 1);
  }
  return r;
}

MultiplierBounds multiplier_bounds(const OrliczFunction& psi) {
  const auto lux = fundamental_lux(psi);
  const auto orl = fundamental_orl(psi);
  MultiplierBounds out{0.0, 0.0};
  for (double t : log_grid(1e-8, 1e8, 801)) {
    const double l = lux(t), o = orl(t);
    out.ratio_sup = std::max(out.ratio_sup, o / l);
    out.inverse_sup = std::max(out.inverse_sup, l / o);
  }
  return out;
}

}  // namespace olab
