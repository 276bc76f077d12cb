#include "orlab/tracial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "orlab/numerics.hpp"

namespace olab {

namespace {

double weighted_psi_sum(const std::vector<Atom>& atoms, const OrliczFunction& psi, double scale) {
  double s = 0;
  for (const auto& a : atoms) {
    if (a.value == 0) continue;
    s += ext_mul(a.weight, psi(a.value * scale));
    if (std::isinf(s)) return kInf;
  }
  return s;
}

double max_value(const std::vector<Atom>& atoms) {
  double m = 0;
  for (const auto& a : atoms) m = std::max(m, a.value);
  return m;
}

std::vector<Atom> atoms_of(const StepFunction& f) {
  if (f.tail() != 0) throw DomainError("norm of a step function with a nonzero tail");
  std::vector<Atom> atoms;
  double prev = 0;
  for (std::size_t j = 0; j < f.values().size(); ++j) {
    atoms.push_back({f.values()[j], f.ends()[j] - prev});
    prev = f.ends()[j];
  }
  return atoms;
}

// Breakpoints of a step function are sums of weights; a relative nudge of 1e-12 keeps evaluation
// inside the intended piece despite summation-order rounding.
double just_after(double t) { return t * (1 + 1e-12) + 1e-300; }

double excess(double lhs, double rhs) { return std::max(0.0, lhs - rhs) / (1 + std::abs(rhs)); }

// Midpoints of the pieces of the common refinement of f and g on [0, limit).
std::vector<double> common_midpoints(const StepFunction& f, const StepFunction& g, double limit) {
  std::vector<double> cuts{0.0, limit};
  for (double e : f.ends())
    if (e < limit) cuts.push_back(e);
  for (double e : g.ends())
    if (e < limit) cuts.push_back(e);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> mids;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    if (cuts[i + 1] > cuts[i] * (1 + 1e-12)) mids.push_back(0.5 * (cuts[i] + cuts[i + 1]));
  return mids;
}

}  // namespace

std::vector<Atom> singular_atoms(const AlgebraElement& a) {
  std::vector<Atom> atoms;
  const auto& blocks = a.algebra()->blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& m = a.block(k);
    if (m.rows() == 1) {
      atoms.push_back({std::abs(m(0, 0)), blocks[k].weight});
      continue;
    }
    for (double s : singular_values(m)) atoms.push_back({s, blocks[k].weight});
  }
  return atoms;
}

StepFunction svf(const AlgebraElement& a) { return StepFunction::from_atoms(singular_atoms(a)); }

double distribution(const AlgebraElement& a, double s) {
  double m = 0;
  for (const auto& at : singular_atoms(a))
    if (at.value > s) m += at.weight;
  return m;
}

TraceFormula trace_formula_check(const AlgebraElement& a) {
  double lhs = 0;
  const auto abs_a = a.abs();
  const auto& blocks = a.algebra()->blocks();
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (double ev : jacobi_eigen(abs_a.block(k)).values) lhs += blocks[k].weight * ev;
  return {lhs, svf(a).integral()};
}

double luxemburg_norm(const std::vector<Atom>& atoms, const OrliczFunction& psi) {
  const double top = max_value(atoms);
  if (top == 0) return 0.0;
  auto fits = [&](double lambda) { return weighted_psi_sum(atoms, psi, 1.0 / lambda) <= 1.0; };
  double hi = top;
  for (int i = 0; i < 4000 && !fits(hi); ++i) hi *= 2;
  double lo = hi / 2;
  for (int i = 0; i < 4000 && fits(lo); ++i) lo /= 2;
  if (fits(lo)) return 0.0;
  return bisect_threshold(fits, lo, hi, kNormRelTol);
}

double luxemburg_norm(const AlgebraElement& a, const OrliczFunction& psi) {
  return luxemburg_norm(singular_atoms(a), psi);
}

double luxemburg_norm(const StepFunction& f, const OrliczFunction& psi) { return luxemburg_norm(atoms_of(f), psi); }

double amemiya_norm(const std::vector<Atom>& atoms, const OrliczFunction& psi) {
  const double top = max_value(atoms);
  if (top == 0) return 0.0;
  const double k_cap = psi.b_psi() / top;  // F(k) = inf beyond
  auto F = [&](double k) {
    k = std::min(k, k_cap);
    return (1 + weighted_psi_sum(atoms, psi, k)) / k;
  };
  const double x0 = -std::log(luxemburg_norm(atoms, psi));
  const double xlo = x0 - 60;
  const double xhi = std::min(x0 + 60, std::log(k_cap));
  const auto g = golden_min([&](double x) { return F(std::exp(x)); }, xlo, xhi, 1e-13);
  double best = g.fx;
  if (std::isfinite(k_cap)) best = std::min(best, F(k_cap));
  return best;
}

double amemiya_norm(const AlgebraElement& a, const OrliczFunction& psi) { return amemiya_norm(singular_atoms(a), psi); }

double orlicz_norm_oracle(const std::vector<Atom>& in, const OrliczFunction& psi) {
  std::vector<Atom> atoms;
  for (const auto& a : in)
    if (a.value > 0) atoms.push_back(a);
  if (atoms.empty()) return 0.0;
  const double top = max_value(atoms);
  const double b = psi.b_psi();
  // x_i = f_i / kappa; the top atoms sit exactly at b when kappa = top / b.
  auto xs = [&](double kappa) {
    std::vector<double> x;
    for (const auto& a : atoms) x.push_back(std::isfinite(b) && a.value == top && kappa == top / b ? b : a.value / kappa);
    return x;
  };
  // Constraint value sum w psi*(g) with g the left or right derivative; psi*(psi'(x)) = x psi'(x) - psi(x).
  auto cost = [&](const std::vector<double>& x, bool right) {
    double c = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double d = right ? psi.right_derivative(x[i]) : psi.left_derivative(x[i]);
      if (std::isinf(d)) return kInf;
      c += atoms[i].weight * (x[i] * d - psi(x[i]));
    }
    return c;
  };
  auto value = [&](const std::vector<double>& g) {
    double v = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) v += atoms[i].weight * atoms[i].value * g[i];
    return v;
  };

  if (std::isfinite(b)) {
    const double kb = top / b;
    const auto x = xs(kb);
    const double cl = cost(x, false);
    if (cl <= 1) {
      // Subdifferential at b is [psi'_-(b), inf); spend the remaining budget there.
      std::vector<double> g;
      double top_mass = 0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        g.push_back(psi.left_derivative(x[i]));
        if (x[i] == b) top_mass += atoms[i].weight * b;
      }
      const double delta = (1 - cl) / top_mass;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (x[i] == b) g[i] += delta;
      return value(g);
    }
  }

  const double floor = std::isfinite(b) ? top / b : top * 1e-200;
  auto within = [&](double kappa) { return cost(xs(kappa), false) <= 1; };
  double hi = std::max(top, floor * 2);
  for (int i = 0; i < 4000 && !within(hi); ++i) hi *= 2;
  double lo = hi / 2;
  while (lo > floor && within(lo)) lo = std::max(floor, lo / 2);
  if (within(lo)) {
    // Budget never binds (psi* vanishes on the range of psi'): the supremum is the limit kappa -> 0.
    const auto x = xs(lo);
    std::vector<double> g;
    for (double xi : x) g.push_back(psi.left_derivative(xi));
    return value(g);
  }
  const double kappa = bisect_threshold(within, lo, hi, 1e-16, 4000);
  const auto x = xs(kappa);
  const double cl = cost(x, false), cr = cost(x, true);
  const double theta = (std::isfinite(cr) && cr > cl) ? std::clamp((1 - cl) / (cr - cl), 0.0, 1.0) : 0.0;
  std::vector<double> g;
  for (double xi : x) g.push_back((1 - theta) * psi.left_derivative(xi) + theta * psi.right_derivative(xi));
  return value(g);
}

double orlicz_norm_oracle(const AlgebraElement& f, const OrliczFunction& psi) {
  if (!f.algebra()->commutative()) throw DomainError("orlicz_norm_oracle: commutative algebras only");
  return orlicz_norm_oracle(singular_atoms(f), psi);
}

CommuteCheck psi_svf_commute_check(const AlgebraElement& a, const OrliczFunction& psi, double tol) {
  const auto mu = svf(a);
  const auto lhs = mu.map([&](double v) { return psi(v); });
  const bool finite = mu.values().empty() || std::isfinite(psi(mu.values().front()));
  double err = 0;
  auto rel_err = [](double x, double y) {
    if (std::isinf(x) || std::isinf(y)) return x == y ? 0.0 : kInf;
    return std::abs(x - y) / (1 + std::max(std::abs(x), std::abs(y)));
  };
  if (finite) {
    const auto psi_abs = a.abs().apply([&](double v) { return psi(std::max(v, 0.0)); });
    const auto rhs = svf(psi_abs);
    for (double t : common_midpoints(lhs, rhs, a.algebra()->total_measure())) err = std::max(err, rel_err(lhs(t), rhs(t)));
    err = std::max(err, rel_err(psi_abs.trace().real(), mu.integral([&](double v) { return psi(v); })));
  } else {
    // psi(|a|) is unbounded: both sides of the trace identity must be infinite.
    double direct = 0;
    for (const auto& at : singular_atoms(a)) direct += ext_mul(at.weight, psi(at.value));
    err = rel_err(direct, mu.integral([&](double v) { return psi(v); }));
  }
  return {err <= tol, err};
}

OnePlusInfSplit split_one_plus_inf(const AlgebraElement& a) {
  std::vector<CMatrix> lo, hi;
  for (const auto& m : a.blocks()) {
    const auto f = svd(m);
    std::vector<double> cap, over;
    for (double s : f.sigma) {
      cap.push_back(std::min(s, 1.0));
      over.push_back(std::max(s - 1.0, 0.0));
    }
    lo.push_back(f.u * CMatrix::diagonal(cap) * f.v.adjoint());
    hi.push_back(f.u * CMatrix::diagonal(over) * f.v.adjoint());
  }
  return {AlgebraElement(a.algebra(), std::move(lo)), AlgebraElement(a.algebra(), std::move(hi))};
}

double fk_subadditivity(const AlgebraElement& a, const AlgebraElement& b) {
  const auto A = svf(a), B = svf(b), S = svf(a + b);
  double worst = 0;
  for (double t : A.left_endpoints())
    for (double s : B.left_endpoints()) worst = std::max(worst, excess(S(just_after(t + s)), A(t) + B(s)));
  return worst;
}

double fk_submultiplicativity(const AlgebraElement& a, const AlgebraElement& b) {
  const auto A = svf(a), B = svf(b), P = svf(a * b);
  double worst = 0;
  for (double t : A.left_endpoints())
    for (double s : B.left_endpoints()) worst = std::max(worst, excess(P(just_after(t + s)), A(t) * B(s)));
  return worst;
}

double fk_left_bound(const AlgebraElement& a, const AlgebraElement& b) {
  const auto B = svf(b), P = svf(a * b);
  const double na = a.op_norm();
  double worst = 0;
  for (double t : B.left_endpoints()) worst = std::max(worst, excess(P(just_after(t)), na * B(t)));
  return worst;
}

double fk_monotone(const AlgebraElement& a, const AlgebraElement& b) {
  const auto A = svf(a), B = svf(b);
  double worst = 0;
  for (double t : B.left_endpoints()) worst = std::max(worst, excess(A(just_after(t)), B(t)));
  return worst;
}

double fk_functional(const AlgebraElement& a, const std::function<double(double)>& f) {
  const auto lhs = svf(a).map(f);
  const auto rhs = svf(a.abs().apply([&](double v) { return f(std::max(v, 0.0)); }));
  double worst = 0;
  for (double t : common_midpoints(lhs, rhs, a.algebra()->total_measure()))
    worst = std::max(worst, std::abs(lhs(t) - rhs(t)) / (1 + std::abs(lhs(t))));
  return worst;
}

}  // namespace olab
