#include "orlab/interpolation.hpp"

#include <algorithm>
#include <cmath>

#include "orlab/numerics.hpp"
#include "orlab/random_instances.hpp"
#include "orlab/tracial.hpp"

namespace olab {

namespace {

double rel_gap(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// Slopes of K on the grid; slope[i] applies on [t[i], t[i+1]).
std::vector<double> chord_slopes(const std::vector<double>& t, const std::vector<double>& K) {
  std::vector<double> s;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) s.push_back((K[i + 1] - K[i]) / (t[i + 1] - t[i]));
  return s;
}

}  // namespace

double k_functional_clip(const AlgebraElement& f, double t) {
  if (!(t > 0)) throw DomainError("k_functional: t must be positive");
  const auto atoms = singular_atoms(f);
  auto cost = [&](double c) {
    double s = t * c;
    for (const auto& a : atoms) s += a.weight * std::max(0.0, a.value - c);
    return s;
  };
  // Convex and piecewise linear in c with kinks at the singular values.
  double best = cost(0.0);
  for (const auto& a : atoms) best = std::min(best, cost(a.value));
  return best;
}

double k_functional(const AlgebraElement& f, double t) {
  const double exact = svf(f).integral_to(t);
  const double clip = k_functional_clip(f, t);
  if (rel_gap(exact, clip) > 1e-8)
    throw CheckFailure("k_functional: int_0^t mu = " + std::to_string(exact) + " but clipping infimum = " +
                       std::to_string(clip));
  return exact;
}

KProfile k_density(const AlgebraElement& f, const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("k_density: empty grid");
  const auto mu = svf(f);
  std::vector<double> t = grid;
  for (double e : mu.ends())
    if (e > grid.front() && e < grid.back()) t.push_back(e);
  if (mu.support() > grid.back()) t.push_back(mu.support());
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  KProfile p;
  p.t = t;
  for (double x : t) p.K.push_back(mu.integral_to(x));
  p.K0 = 0.0;
  p.k_head = p.K.front() / t.front();
  p.k = chord_slopes(t, p.K);
  p.k.push_back(0.0);
  return p;
}

double concavity_defect(const std::vector<double>& t, const std::vector<double>& K) {
  const auto s = chord_slopes(t, K);
  double worst = -kInf;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) worst = std::max(worst, s[i + 1] - s[i]);
  return s.size() < 2 ? 0.0 : worst;
}

ModifiedKCurve modified_K_curve(const IotaSum& x, const std::vector<double>& grid) {
  DecompositionFamily fam(x.density, x.coefficient());
  fam.add(split_costs(*x.density, x.c0, x.d0, x.e0, x.f0));
  for (double t : grid) fam.refine(t);
  ModifiedKCurve c{grid, {}, 0.0, fam.size()};
  for (double t : grid) c.K.push_back(fam.value(t));
  // Members are affine in sqrt(t) near 0: K(t) = K0 + a sqrt(t) + O(t).
  constexpr double t1 = 1e-8;
  const double k1 = fam.value(t1), k4 = fam.value(4 * t1);
  c.K0 = std::clamp(2 * k1 - k4, 0.0, k1);
  return c;
}

double modified_K(const IotaSum& x, double t) {
  DecompositionFamily fam(x.density, x.coefficient());
  fam.add(split_costs(*x.density, x.c0, x.d0, x.e0, x.f0));
  fam.refine(t);
  return fam.value(t);
}

KProfile k_tilde(const ModifiedKCurve& curve) {
  if (curve.t.empty()) throw DomainError("k_tilde: empty curve");
  KProfile p{curve.t, curve.K, {}, curve.K0, 0.0};
  p.k_head = (curve.K.front() - curve.K0) / curve.t.front();
  std::vector<double> seq{p.k_head};
  std::vector<double> w{curve.t.front()};
  const auto s = chord_slopes(curve.t, curve.K);
  for (std::size_t i = 0; i < s.size(); ++i) {
    seq.push_back(s[i]);
    w.push_back(curve.t[i + 1] - curve.t[i]);
  }
  double scale = 0;
  for (double v : seq) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (seq[i + 1] - seq[i] > kIsotonicTol * std::max(scale, 1e-300))
      throw CheckFailure("k_tilde: density increases by " + std::to_string(seq[i + 1] - seq[i]) + " at t = " +
                         std::to_string(curve.t[i]));
  const auto iso = isotonic_nonincreasing(seq, w);
  p.k_head = std::max(0.0, iso.front());
  for (std::size_t i = 1; i < iso.size(); ++i) p.k.push_back(std::max(0.0, iso[i]));
  p.k.push_back(0.0);
  return p;
}

double reconstruction_error(const KProfile& p) {
  double acc = p.K0 + p.k_head * p.t.front();
  double worst = std::abs(acc - p.K.front()) / (1 + std::abs(p.K.front()));
  for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
    acc += p.k[i] * (p.t[i + 1] - p.t[i]);
    worst = std::max(worst, std::abs(acc - p.K[i + 1]) / (1 + std::abs(p.K[i + 1])));
  }
  return worst;
}

// ---------------------------------------------------------------- Riesz-Fischer norms

RieszFischerSpec RieszFischerSpec::lq(double q) {
  if (!(q >= 1)) throw DomainError("riesz-fischer L^q needs q >= 1");
  RieszFischerSpec s;
  s.q_ = q;
  if (!s.validate().ok()) throw DomainError("riesz-fischer spec " + s.label() + " failed validation");
  return s;
}

RieszFischerSpec RieszFischerSpec::orlicz(const OrliczFunction& psi) {
  RieszFischerSpec s;
  s.psi_ = std::make_shared<const OrliczFunction>(psi);
  if (!s.validate().ok()) throw DomainError("riesz-fischer spec " + s.label() + " failed validation");
  return s;
}

std::string RieszFischerSpec::label() const {
  if (psi_) return "orlicz(" + psi_->label() + ")";
  return std::isinf(q_) ? "L^inf" : "L^" + std::to_string(q_);
}

double RieszFischerSpec::evaluate(const std::vector<double>& values, const std::vector<double>& widths) const {
  if (psi_) {
    std::vector<Atom> atoms;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (values[i] > 0 && widths[i] > 0) {
        if (std::isinf(widths[i])) return kInf;
        atoms.push_back({values[i], widths[i]});
      }
    return luxemburg_norm(atoms, *psi_);
  }
  if (std::isinf(q_)) {
    double m = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (widths[i] > 0) m = std::max(m, values[i]);
    return m;
  }
  double s = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] > 0) s += std::pow(values[i], q_) * widths[i];
  return std::pow(s, 1.0 / q_);
}

RieszFischerSpec::Validation RieszFischerSpec::validate() const {
  Validation v{0.0, 0.0, 0.0};
  constexpr int kSamples = 40;
  constexpr std::size_t kPieces = 8;
  const std::vector<double> unit(kPieces, 1.0);
  for (int trial = 0; trial < kSamples; ++trial) {
    InstanceRng rng(0x5eed, static_cast<std::uint64_t>(trial));
    std::vector<double> f(kPieces);
    for (auto& x : f) x = rng.log_uniform(1e-3, 1e2);
    std::sort(f.rbegin(), f.rend());

    // Reversal and delay of a nonincreasing f are dominated in the Hardy sense.
    const double rf = evaluate(f, unit);
    std::vector<double> rev(f.rbegin(), f.rend());
    std::vector<double> delayed{0.0};
    delayed.insert(delayed.end(), f.begin(), f.end() - 1);
    if (std::isfinite(rf) && (!std::isfinite(evaluate(rev, unit)) || !std::isfinite(evaluate(delayed, unit))))
      v.domination = 1.0;

    // E = union of pieces [a, b).
    const int a = rng.integer(0, static_cast<int>(kPieces) - 1);
    const int b = rng.integer(a, static_cast<int>(kPieces) - 1);
    std::vector<double> chi(kPieces, 0.0);
    double mE = 0, intE = 0;
    for (int i = a; i <= b; ++i) {
      chi[static_cast<std::size_t>(i)] = 1.0;
      mE += 1.0;
      intE += f[static_cast<std::size_t>(i)];
    }
    if (!std::isfinite(evaluate(chi, unit))) v.indicator = kInf;
    double cE;
    if (psi_) {
      cE = fundamental_orl(conjugate(*psi_))(mE);
    } else {
      cE = std::isinf(q_) ? mE : std::pow(mE, 1.0 - 1.0 / q_);
    }
    v.indicator = std::max(v.indicator, (intE - cE * rf) / (cE * rf));

    std::vector<double> sum(kPieces, 0.0);
    double sum_rho = 0;
    for (int n = 0; n < 5; ++n) {
      std::vector<double> g(kPieces);
      for (auto& x : g) x = rng.uniform(0, 1) < 0.3 ? 0.0 : rng.log_uniform(1e-3, 1e2);
      for (std::size_t i = 0; i < kPieces; ++i) sum[i] += g[i];
      sum_rho += evaluate(g, unit);
    }
    v.subadditivity = std::max(v.subadditivity, (evaluate(sum, unit) - sum_rho) / sum_rho);
  }
  return v;
}

double riesz_fischer_norm(const RieszFischerSpec& spec, const KProfile& p) {
  std::vector<double> values{p.k_head}, widths{p.t.front()};
  for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
    values.push_back(p.k[i]);
    widths.push_back(p.t[i + 1] - p.t[i]);
  }
  if (!p.k.empty() && p.k.back() > 0) {
    values.push_back(p.k.back());
    widths.push_back(kInf);
  }
  return spec.evaluate(values, widths);
}

}  // namespace olab
