#include "orlab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <map>

#include "orlab/interpolation.hpp"
#include "orlab/numerics.hpp"
#include "orlab/random_instances.hpp"
#include "orlab/tracial.hpp"

namespace olab {

namespace {

struct CheckDecl {
  const char* name;
  const char* anchor;
  double tolerance;
};
struct MeasureDecl {
  const char* name;
  const char* anchor;
};

class TrialLog {
 public:
  TrialLog(const std::vector<CheckDecl>& c, const std::vector<MeasureDecl>& m) : checks_(c), measures_(m) {
    for (const auto& d : c) out_checks_.push_back({d.name, d.anchor, d.tolerance, 0.0, 0});
    for (const auto& d : m) out_measures_.push_back({d.name, d.anchor});
  }

  void check(const std::string& name, double violation) {
    auto& c = out_checks_[index(checks_, name)];
    if (std::isnan(violation)) violation = kInf;
    c.max_violation = std::max(c.max_violation, violation);
    ++c.samples;
  }
  void flag(const std::string& name, bool bad) { check(name, bad ? 1.0 : 0.0); }
  void measure(const std::string& name, double value) {
    auto& m = out_measures_[index(measures_, name)];
    m.min = std::min(m.min, value);
    m.max = std::max(m.max, value);
    ++m.samples;
  }

  void merge(const TrialLog& o) {
    for (std::size_t i = 0; i < out_checks_.size(); ++i) {
      out_checks_[i].max_violation = std::max(out_checks_[i].max_violation, o.out_checks_[i].max_violation);
      out_checks_[i].samples += o.out_checks_[i].samples;
    }
    for (std::size_t i = 0; i < out_measures_.size(); ++i) {
      out_measures_[i].min = std::min(out_measures_[i].min, o.out_measures_[i].min);
      out_measures_[i].max = std::max(out_measures_[i].max, o.out_measures_[i].max);
      out_measures_[i].samples += o.out_measures_[i].samples;
    }
  }

  std::vector<SuiteCheck> out_checks_;
  std::vector<SuiteMeasurement> out_measures_;

 private:
  template <class D>
  static std::size_t index(const std::vector<D>& decls, const std::string& name) {
    for (std::size_t i = 0; i < decls.size(); ++i)
      if (name == decls[i].name) return i;
    throw std::logic_error("undeclared check " + name);
  }
  const std::vector<CheckDecl>& checks_;
  const std::vector<MeasureDecl>& measures_;
};

struct SuiteDef {
  std::vector<CheckDecl> checks;
  std::vector<MeasureDecl> measures;
  std::function<void(InstanceRng&, int, TrialLog&)> trial;
};

// |a - b| / max(|a|, |b|, floor); equal infinities agree.
double rel_err(double a, double b, double floor = 0.0) {
  if (a == b) return 0.0;
  if (std::isinf(a) || std::isinf(b)) return kInf;
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

// Relative amount by which lhs exceeds rhs.
double excess(double lhs, double rhs) {
  if (lhs <= rhs) return 0.0;
  if (std::isinf(lhs)) return kInf;
  return (lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

std::vector<OrliczFunction> identity_psis() {
  return {OrliczFunction::power(1), OrliczFunction::power(2), OrliczFunction::power(4), OrliczFunction::one_cap_inf(),
          OrliczFunction::one_plus_inf()};
}

OrliczFunction sample_table() {
  return OrliczFunction::table({{0, 0}, {0.5, 0}, {1, 0.25}, {2, 1.5}, {4, 6}});
}

std::vector<OrliczFunction> all_psis() {
  return {OrliczFunction::power(1), OrliczFunction::power(1.5), OrliczFunction::power(2), OrliczFunction::power(4),
          OrliczFunction::linf(),   OrliczFunction::one_cap_inf(), OrliczFunction::one_plus_inf(), sample_table()};
}

OrliczFunction random_table(InstanceRng& rng) {
  std::vector<Knot> knots{{0, 0}};
  double t = 0, v = 0, slope = rng.uniform(0, 1) < 0.5 ? 0.0 : rng.log_uniform(0.05, 1);
  const int n = rng.integer(2, 5);
  for (int i = 0; i < n; ++i) {
    const double w = rng.log_uniform(0.1, 2);
    t += w;
    v += slope * w;
    knots.push_back({t, v});
    slope += rng.log_uniform(0.05, 2);
  }
  return OrliczFunction::table(std::move(knots));
}

std::size_t pick(int trial, std::size_t n) { return static_cast<std::size_t>(trial) % n; }

// ---------------------------------------------------------------------------------------------

SuiteDef mainthm_suite() {
  SuiteDef s;
  s.checks = {
      {"lambda_identity", "lambda_eps(a (x) phi_psi(e^t)) = tau(psi(|a|/eps)), |lhs - rhs| / (1 + rhs)", 1e-9},
      {"grid_quadrature", "|lambda_grid - lambda| / documented quadrature bound", 1.0},
      {"luxemburg_bridge", "mu_1(a (x) phi_psi(e^t)) = ||a||_psi (Luxemburg)", 1e-8},
      {"amemiya_bridge", "inf_k k (1 + lambda_k(a (x) phi_psi(e^t))) = ||a||^O_psi (Amemiya)", 1e-8},
      {"amemiya_dual_oracle", "Amemiya norm = sup over the psi*-unit ball of the dual pairing", 1e-5},
      {"luxemburg_le_orlicz", "||a||_psi <= ||a||^O_psi", 1e-12},
      {"orlicz_le_2luxemburg", "||a||^O_psi <= 2 ||a||_psi", 1e-12},
  };
  s.measures = {{"orl_mu1_over_orlicz_norm", "mu_1(a (x) tilde phi_psi(e^t)) / ||a||^O_psi - 1 (not asserted)"}};
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    const auto alg = random_commutative(rng);
    const auto a = random_diagonal(rng, alg);
    const auto psis = identity_psis();
    for (const auto& psi : psis)
      for (double eps : log_grid(0.01, 100, 9)) {
        const auto m = verify_mainthm(a, psi, eps);
        if (std::isinf(m.rhs) || std::isinf(m.lhs))
          log.check("lambda_identity", m.lhs == m.rhs ? 0.0 : kInf);
        else
          log.check("lambda_identity", std::abs(m.lhs - m.rhs) / (1 + m.rhs));
      }

    const auto x = tensor_fundamental(tracial_density(alg), a, psis[pick(trial, psis.size())]);
    const auto& sp = x.grid_spectrum();
    for (double eps : log_grid(0.05, 20, 5)) {
      const double exact = distribution_crossed(x, eps), grid = sp.distribution(eps);
      if (std::isinf(exact) || std::isinf(grid))
        log.check("grid_quadrature", exact == grid ? 0.0 : kInf);
      else
        log.check("grid_quadrature", std::abs(grid - exact) / grid_quadrature_bound(GridSpec{}, exact));
    }

    const auto tracial = tracial_density(alg);
    for (const auto& psi : all_psis()) {
      log.check("luxemburg_bridge", rel_err(lux_via_mu1(a, psi), luxemburg_norm(a, psi)));
      const double am = amemiya_norm(a, psi);
      log.check("amemiya_bridge", rel_err(amemiya_via_lambda(a, psi), am));
      const auto orl = CrossedElement::separable(tracial, {Term{a, fundamental_orl(psi)}});
      log.measure("orl_mu1_over_orlicz_norm", quasinorm_mu1(orl) / am - 1);
    }

    const auto small = random_commutative(rng, 4);
    const auto f = random_diagonal(rng, small, 0.01, 10);
    for (const auto& psi : all_psis())
      log.check("amemiya_dual_oracle", rel_err(amemiya_norm(f, psi), orlicz_norm_oracle(f, psi)));

    const auto nc = random_algebra(rng);
    const auto y = random_element(rng, nc, rng.log_uniform(0.01, 100));
    for (const auto& psi : all_psis()) {
      const double lux = luxemburg_norm(y, psi), am = amemiya_norm(y, psi);
      log.check("luxemburg_le_orlicz", excess(lux, am));
      log.check("orlicz_le_2luxemburg", excess(am, 2 * lux));
    }
  };
  return s;
}

SuiteDef mu1_suite() {
  SuiteDef s;
  s.checks = {
      {"t_mu_t_le_mu_1", "t mu_t(x) <= mu_1(x) for t in (0, 1]", 1e-12},
      {"quasi_triangle", "mu_1(x + y) <= 2 (mu_1(x) + mu_1(y))", 0.0},
      {"homogeneity", "mu_1(2x) = 2 mu_1(x)", 1e-12},
      {"dt_identity", "d_t = phi(u) / phi(e^{-s} u) reproduces theta_s, max relative error", 1e-6},
      {"dt_contraction", "||d_t|| <= 1", 1e-12},
  };
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    CrossedElement x = CrossedElement::zero(tracial_density(make_algebra({{1, 1.0}})));
    CrossedElement y = x;
    if (trial % 2 == 0) {
      const auto alg = random_commutative(rng, 5);
      const auto d = make_density(random_diagonal_density(rng, alg));
      const auto psis = all_psis();
      x = embed_luxemburg(d, random_diagonal(rng, alg), psis[pick(trial / 2, psis.size())]);
      y = embed_luxemburg(d, random_diagonal(rng, alg), psis[pick(trial / 2 + 3, psis.size())]);
    } else {
      const auto alg = random_algebra(rng, 2, 3);
      const auto d = make_density(random_density(rng, alg));
      const double p = std::vector<double>{1, 1.5, 2, 3}[pick(trial / 2, 4)];
      x = HaagerupElement(random_element(rng, alg), p).to_crossed(d);
      y = HaagerupElement(random_element(rng, alg), p).to_crossed(d);
    }
    log.check("t_mu_t_le_mu_1", quasinorm_excess(x));
    log.check("t_mu_t_le_mu_1", quasinorm_excess(y));
    const double mx = quasinorm_mu1(x), my = quasinorm_mu1(y);
    log.check("quasi_triangle", excess(quasinorm_mu1(x + y), 2 * (mx + my)));
    log.check("homogeneity", rel_err(quasinorm_mu1(x * cplx(2)), 2 * mx));

    if (trial % 20 == 0) {
      const auto alg = random_algebra(rng, 2, 3);
      const auto d = make_density(random_density(rng, alg));
      const std::vector<OrliczFunction> psis{OrliczFunction::power(2), OrliczFunction::one_cap_inf(),
                                             OrliczFunction::one_plus_inf()};
      const auto& psi = psis[pick(trial / 20, psis.size())];
      const auto g = embed_luxemburg(d, random_element(rng, alg), psi);
      const double step = GridSpec{}.step();
      for (int k : {1, 37, 300}) {
        const auto r = verify_dt_identity(g, psi, std::exp(-k * step));
        log.check("dt_identity", r.max_rel_error);
        log.check("dt_contraction", excess(r.d_norm, 1.0));
      }
    }
  };
  return s;
}

SuiteDef genminnorm_suite() {
  SuiteDef s;
  s.checks = {
      {"capinf_lower", "mu_1(x) / 16 <= ||x||_{1 cap inf}", 0.0},
      {"capinf_upper", "||x||_{1 cap inf} <= mu_1(x)", 1e-12},
      {"sum_lower_le_upper", "certified lower bound <= family upper bound of ||x||_{1+inf}", 0.0},
      {"sum_eps_mu_eps", "eps mu_eps(x) / 4 <= upper bound of ||x||_{1+inf}, eps in (0, 4]", 1e-12},
      {"sum_unit", "||iota_inf(1)||_{1+inf} <= 1", 1e-14},
  };
  s.measures = {{"sum_gap", "upper / lower bound of ||x||_{1+inf} (not asserted)"}};
  s.trial = [](InstanceRng& rng, int, TrialLog& log) {
    const auto al = random_commutative(rng);
    const auto d = make_density(random_diagonal_density(rng, al));
    const auto b = random_element(rng, al, rng.log_uniform(0.01, 100));
    const double n = norm_1capinf(*d, b);
    const double m1 = quasinorm_mu1(embed_luxemburg(d, b, OrliczFunction::one_cap_inf()));
    log.check("capinf_lower", excess(m1 / 16, n));
    log.check("capinf_upper", excess(n, m1));

    const auto al2 = random_commutative(rng);
    const auto d2 = make_density(random_diagonal_density(rng, al2));
    const auto x = iota_1(d2, random_diagonal(rng, al2)) + iota_2r(d2, random_diagonal(rng, al2)) +
                   iota_2l(d2, random_diagonal(rng, al2)) + iota_inf(d2, random_diagonal(rng, al2));
    const auto bounds = norm_1plusinf(x);
    log.check("sum_lower_le_upper", excess(bounds.lower, bounds.upper));
    log.measure("sum_gap", bounds.upper / bounds.lower);
    const auto xc = x.to_crossed();
    for (double eps : log_grid(1e-3, 4, 15)) log.check("sum_eps_mu_eps", excess(0.25 * eps * mu_crossed(xc, eps), bounds.upper));
    log.check("sum_unit", excess(norm_1plusinf(iota_inf(d2, AlgebraElement::identity(al2))).upper, 1.0));
  };
  return s;
}

SuiteDef haagerup_suite() {
  SuiteDef s;
  s.checks = {
      {"lp_law", "t^{1/p} mu_t(x) = (sum w sigma(b rho^{1/p})^p)^{1/p} for all t", 1e-9},
      {"normability_integral", "int_0^1 mu_t(x) dt = p/(p-1) ||x||_p", 1e-8},
      {"normability_lower", "mu_1(x) <= int_0^1 mu_t(x) dt", 0.0},
      {"normability_upper", "int_0^1 mu_t(x) dt <= C_psi mu_1(x), C_psi the Boyd constant", 0.0},
      {"dilation_bound", "t mu_t(x) <= k_{psi*}(t) mu_1(x)", 1e-9},
  };
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    const auto alg = random_algebra(rng);
    const auto d = make_density(random_density(rng, alg));
    const double p = std::vector<double>{1, 1.5, 2, 3}[pick(trial, 4)];
    const HaagerupElement hx(random_element(rng, alg), p);
    const auto x = hx.to_crossed(d);
    const double norm = hx.lp_norm(*d);
    for (double t : log_grid(1e-3, 1e3, 20)) log.check("lp_law", rel_err(std::pow(t, 1 / p) * mu_crossed(x, t), norm));
    if (p > 1) {
      const auto r = normability_norm(x, OrliczFunction::power(p));
      log.check("normability_integral", rel_err(r.integral, p / (p - 1) * norm));
      log.flag("normability_lower", !r.lower_ok);
      log.flag("normability_upper", !r.upper_ok);
      log.check("dilation_bound", std::max(0.0, r.worst_dilation_excess));
    }
  };
  return s;
}

SuiteDef k3gen_suite() {
  SuiteDef s;
  s.checks = {
      {"s_upper_member", "c sqrt(phi_psi)(h) lies in S^psi", 0.0},
      {"s_lower_member", "c' sqrt(tilde phi_{psi*})(h) lies in S_{psi*}", 0.0},
      {"product_l2", "S_{psi*} times (S^psi)* lands in L^2", 0.0},
      {"sandwich_l2", "S^psi times sqrt(tilde phi_{psi*})(h) lands in L^2", 0.0},
      {"pairing_bound", "|tr(ba)| <= 2 mu_1(b) mu_1(a)", 0.0},
      {"pairing_value", "tr(ba) = tau(c' rho c) for commuting data, |error| / (1 + |value|)", 1e-9},
      {"iota_images", "iota_1, iota_2r, iota_2l, iota_inf land in L_{1+inf}", 0.0},
      {"probe_3mu1", "|tr(b0 a b1*)| <= 3 mu_1(b0) mu_1(b1) mu_1(a)", 0.0},
  };
  s.measures = {{"probe_ratio_over_mu1", "sup |tr(b0 a b1*)| / (mu_1(b0) mu_1(b1) mu_1(a)) (constant 1 not asserted)"}};
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    const auto alg = random_algebra(rng, 2, 3);
    const auto d = make_density(random_density(rng, alg));
    const std::vector<OrliczFunction> chain_psis{OrliczFunction::power(2), OrliczFunction::power(3),
                                                 OrliczFunction::one_cap_inf()};
    const auto& psi = chain_psis[pick(trial, chain_psis.size())];
    const auto conj = conjugate(psi);
    const auto a = CrossedElement::separable(
        d, {Term{random_element(rng, alg), sqrt_profile(fundamental_lux(psi)), Argument::density, Placement::right}});
    const auto b = CrossedElement::separable(
        d, {Term{random_element(rng, alg), sqrt_profile(fundamental_orl(conj)), Argument::density, Placement::right}});
    log.flag("s_upper_member", membership(a, Space::with_psi(SpaceKind::S_upper, psi)).verdict != Verdict::member);
    log.flag("s_lower_member", membership(b, Space::with_psi(SpaceKind::S_lower, conj)).verdict != Verdict::member);
    log.flag("product_l2", membership(b * a.adjoint(), Space::Lp(2)).verdict != Verdict::member);
    log.flag("sandwich_l2", membership(a * h_function(d, sqrt_profile(fundamental_orl(conj))), Space::Lp(2)).verdict !=
                                Verdict::member);

    const auto al = random_commutative(rng, 4);
    const auto dd = make_density(random_diagonal_density(rng, al));
    const auto psis = all_psis();
    const auto& p = psis[pick(trial, psis.size() - 1)];
    const auto c = random_element(rng, al), cp = random_element(rng, al);
    const auto pa = CrossedElement::separable(dd, {Term{c, fundamental_lux(p), Argument::density, Placement::left}});
    const auto pb =
        CrossedElement::separable(dd, {Term{cp, fundamental_orl(conjugate(p)), Argument::density, Placement::right}});
    const auto rep = pairing_duality(pa, pb, p);
    log.flag("pairing_bound", !rep.ok);
    const cplx expect = (cp * dd->rho() * c).trace();
    log.check("pairing_value", std::abs(rep.value - expect) / (1 + std::abs(expect)));

    const auto space = Space::with_psi(SpaceKind::Lorlicz, OrliczFunction::one_plus_inf());
    for (const auto& x : {iota_1(d, random_element(rng, alg)), iota_2r(d, random_element(rng, alg)),
                          iota_2l(d, random_element(rng, alg)), iota_inf(d, random_element(rng, alg))})
      log.flag("iota_images", membership(x.to_crossed(), space).verdict != Verdict::member);

    const auto probe_seed = rng.engine()();
    const auto pr = probe_triple_norm(random_element(rng, alg), d, psi, 40, probe_seed);
    log.flag("probe_3mu1", !pr.bound_3mu1_ok);
    if (pr.mu1 > 0) log.measure("probe_ratio_over_mu1", pr.sup_ratio / pr.mu1);
  };
  return s;
}

SuiteDef normtop_suite() {
  SuiteDef s;
  s.checks = {{"lambda_sqrt_eps", "lux(a) < eps^2 <= 1 implies lambda_{sqrt eps}(a (x) phi_psi(e^t)) <= sqrt eps", 1e-12}};
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    const auto alg = random_commutative(rng);
    auto a = random_diagonal(rng, alg);
    auto psis = identity_psis();
    psis.push_back(sample_table());
    const auto& psi = psis[pick(trial, psis.size())];
    const double target = rng.log_uniform(1e-3, 0.9);
    a *= cplx(target / lux_via_mu1(a, psi));
    const double lux = lux_via_mu1(a, psi);
    double alpha = std::exp(rng.uniform(std::log(lux), 0.0));
    if (!(alpha > lux)) alpha = std::min(1.0, 1.01 * lux);
    const double eps = std::sqrt(alpha);
    const double r = std::sqrt(eps);
    log.check("lambda_sqrt_eps", excess(distribution_crossed(tensor_fundamental(tracial_density(alg), a, psi), r), r));
  };
  return s;
}

SuiteDef kmethod_suite() {
  SuiteDef s;
  s.checks = {
      {"k_functional", "inf over clipping thresholds = int_0^t mu_s(f) ds", 1e-8},
      {"k_is_mu", "k(f, t) = mu_t(f) at continuity points", 1e-9},
      {"classical_reconstruction", "K(t) = int_0^t k", 1e-12},
      {"modified_concavity", "chord slopes of the modified K are nonincreasing (relative to k(0+))", 1e-10},
      {"modified_density", "modified k is nonincreasing up to isotonic roundoff", 0.0},
      {"modified_reconstruction", "K(t) = K(0+) + int_0^t k", 1e-6},
  };
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    const auto alg = random_algebra(rng);
    const auto f = random_element(rng, alg, rng.log_uniform(0.1, 10));
    const auto mu = svf(f);
    for (double t : log_grid(1e-3, 1e2, 20)) log.check("k_functional", rel_err(k_functional_clip(f, t), mu.integral_to(t)));
    const auto p = k_density(f, log_grid(1e-6, 1e6, 64));
    for (std::size_t i = 0; i + 1 < p.t.size(); ++i) {
      const double m = mu(0.5 * (p.t[i] + p.t[i + 1]));
      log.check("k_is_mu", std::abs(p.k[i] - m) / (1 + m));
    }
    log.check("classical_reconstruction", reconstruction_error(p));

    if (trial % 5 == 0) {
      const auto al = random_algebra(rng, 2, 3);
      const auto d = make_density(random_density(rng, al));
      const auto x = iota_1(d, random_element(rng, al)) + iota_2r(d, random_element(rng, al)) +
                     iota_2l(d, random_element(rng, al)) + iota_inf(d, random_element(rng, al));
      const auto curve = modified_K_curve(x, log_grid(1e-6, 1e6, 64));
      const double scale = std::max(1.0, (curve.K.front() - curve.K0) / curve.t.front());
      log.check("modified_concavity", std::max(0.0, concavity_defect(curve.t, curve.K)) / scale);
      try {
        const auto kt = k_tilde(curve);
        log.flag("modified_density", false);
        log.check("modified_reconstruction", reconstruction_error(kt));
      } catch (const CheckFailure&) {
        log.flag("modified_density", true);
      }
    }
  };
  return s;
}

SuiteDef fk_suite() {
  SuiteDef s;
  s.checks = {
      {"subadditivity", "mu_{t+s}(a + b) <= mu_t(a) + mu_s(b)", 1e-10},
      {"submultiplicativity", "mu_{t+s}(ab) <= mu_t(a) mu_s(b)", 1e-10},
      {"left_bound", "mu_t(ab) <= ||a|| mu_t(b)", 1e-10},
      {"monotone", "0 <= a <= b implies mu_t(a) <= mu_t(b)", 1e-10},
      {"functional_calculus", "f(mu_t(|a|)) = mu_t(f(|a|)) for increasing continuous f, f(0) >= 0", 1e-10},
      {"trace_formula", "tau(|a|) = int_0^inf mu_t(a) dt", 1e-10},
  };
  s.trial = [](InstanceRng& rng, int, TrialLog& log) {
    const auto alg = random_algebra(rng);
    const auto a = random_element(rng, alg), b = random_element(rng, alg);
    log.check("subadditivity", fk_subadditivity(a, b));
    log.check("submultiplicativity", fk_submultiplicativity(a, b));
    log.check("left_bound", fk_left_bound(a, b));
    const auto p = random_positive(rng, alg), q = p + random_positive(rng, alg);
    log.check("monotone", fk_monotone(p, q));
    const double c = rng.log_uniform(0.1, 3);
    log.check("functional_calculus", fk_functional(a, [c](double v) { return v * v + c; }));
    log.check("functional_calculus", fk_functional(a, [](double v) { return std::sqrt(v); }));
    const auto tf = trace_formula_check(a);
    log.check("trace_formula", rel_err(tf.lhs, tf.rhs));
  };
  return s;
}

SuiteDef functions_suite() {
  SuiteDef s;
  s.checks = {
      {"biconjugate", "psi** = psi", 1e-6},
      {"fundamental_product", "phi_psi(t) tilde phi_{psi*}(t) = t", 1e-9},
      {"fundamental_sandwich", "phi_psi <= tilde phi_psi <= 2 phi_psi", 1e-12},
      {"psi0_roundtrip", "fundamental function of the reconstructed psi_0 reproduces phi", 1e-8},
      {"boyd_constant", "Boyd constant of psi_p equals p/(p-1), absolute error", 1e-3},
  };
  s.trial = [](InstanceRng& rng, int trial, TrialLog& log) {
    const auto builtins = all_psis();
    const std::vector<OrliczFunction> fns{builtins[pick(trial, builtins.size())], random_table(rng)};
    for (const auto& psi : fns) {
      const bool power_one = psi.kind() == OrliczKind::power && psi.exponent() == 1;
      if (!power_one) {
        const auto bi = conjugate(conjugate(psi));
        for (double t : log_grid(0.01, 100, 25)) log.check("biconjugate", rel_err(bi(t), psi(t), 1.0));
      }
      const auto phi = fundamental_lux(psi), tphi = fundamental_orl(psi), tconj = fundamental_orl(conjugate(psi));
      for (double t : log_grid(1e-6, 1e6, 61)) {
        log.check("fundamental_product", std::abs(phi(t) * tconj(t) - t) / std::max(1.0, t));
        log.check("fundamental_sandwich", excess(phi(t), tphi(t)));
        log.check("fundamental_sandwich", excess(tphi(t), 2 * phi(t)));
      }
    }
    // The reconstruction needs a concave phi: c t^p and psi_{1+inf} qualify, tables in general do not.
    const auto rpsi = trial % 4 == 3 ? OrliczFunction::one_plus_inf()
                                     : OrliczFunction::power(rng.uniform(1, 5), rng.log_uniform(0.1, 10));
    const auto prof = sample_profile(fundamental_lux(rpsi));
    const auto rec = fundamental_lux(orlicz_from_fundamental(prof).psi0);
    for (std::size_t i = 1; i + 1 < prof.t.size(); i += 7) log.check("psi0_roundtrip", rel_err(rec(prof.t[i]), prof.phi[i]));
    if (trial == 0)
      for (double p : {2.0, 4.0}) {
        const auto r = boyd_normability(OrliczFunction::power(p));
        log.check("boyd_constant", std::abs(r.constant - p / (p - 1)));
      }
  };
  return s;
}

const std::map<std::string, SuiteDef (*)()>& registry() {
  static const std::map<std::string, SuiteDef (*)()> r{
      {"mainthm", mainthm_suite}, {"mu1", mu1_suite},         {"genminnorm", genminnorm_suite},
      {"haagerup", haagerup_suite}, {"k3gen", k3gen_suite},   {"normtop", normtop_suite},
      {"kmethod", kmethod_suite},   {"fk", fk_suite},          {"functions", functions_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"mainthm", "mu1",    "genminnorm", "haagerup", "k3gen",
                                              "normtop", "kmethod", "fk",        "functions"};
  return names;
}

SuiteReport run_suite(const std::string& name, int trials, std::uint64_t seed,
                      const std::map<std::string, double>& tighten) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw DomainError("unknown suite \"" + name + "\"");
  if (trials < 1) throw DomainError("trials must be positive");
  SuiteDef def = it->second();
  for (const auto& [check, tol] : tighten) {
    auto d = std::find_if(def.checks.begin(), def.checks.end(), [&](const CheckDecl& c) { return check == c.name; });
    if (d == def.checks.end()) throw SchemaError("suite " + name + " has no check \"" + check + "\"");
    if (!(tol >= 0) || tol > d->tolerance)
      throw SchemaError("tolerance for " + check + " may only be tightened (default " + std::to_string(d->tolerance) + ")");
    d->tolerance = tol;
  }

  std::vector<TrialLog> logs;
  logs.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) logs.emplace_back(def.checks, def.measures);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    try {
      InstanceRng rng(seed, static_cast<std::uint64_t>(i));
      def.trial(rng, i, logs[static_cast<std::size_t>(i)]);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  TrialLog total(def.checks, def.measures);
  for (const auto& l : logs) total.merge(l);
  return SuiteReport{name, trials, seed, total.out_checks_, total.out_measures_};
}

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.pass(); });
}

double SuiteReport::normalized_violation() const {
  double worst = 0;
  for (const auto& c : checks) {
    if (c.tolerance > 0)
      worst = std::max(worst, c.max_violation / c.tolerance);
    else if (c.max_violation > 0)
      worst = kInf;
  }
  return worst;
}

const SuiteCheck* SuiteReport::first_failure() const {
  for (const auto& c : checks)
    if (!c.pass()) return &c;
  return nullptr;
}

json SuiteReport::to_json() const {
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name},
                  {"anchor", c.anchor},
                  {"max_violation", number_or_inf(c.max_violation)},
                  {"tolerance", c.tolerance},
                  {"samples", c.samples},
                  {"pass", c.pass()}});
  json ms = json::array();
  for (const auto& m : measurements)
    ms.push_back({{"name", m.name},
                  {"anchor", m.anchor},
                  {"min", m.samples ? number_or_inf(m.min) : json(nullptr)},
                  {"max", m.samples ? number_or_inf(m.max) : json(nullptr)},
                  {"samples", m.samples}});
  return {{"schema", kSchemaVersion},
          {"suite", suite},
          {"trials", trials},
          {"seed", seed},
          {"max_violation", number_or_inf(normalized_violation())},
          {"tolerance", 1.0},
          {"pass", pass()},
          {"checks", cs},
          {"measurements", ms}};
}

}  // namespace olab
