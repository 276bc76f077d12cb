#include <cmath>

#include "doctest.h"
#include "orlab/crossed.hpp"
#include "orlab/numerics.hpp"
#include "orlab/random_instances.hpp"
#include "orlab/tracial.hpp"

using namespace olab;

namespace {

AlgebraElement diag(const AlgebraPtr& alg, std::vector<double> d) { return AlgebraElement::diagonal(alg, d); }
AlgebraPtr scalar_algebra(double w = 1.0) { return make_algebra({{1, w}}); }

std::vector<OrliczFunction> psis() {
  return {OrliczFunction::power(1), OrliczFunction::power(1.5), OrliczFunction::power(2), OrliczFunction::power(4),
          OrliczFunction::linf(), OrliczFunction::one_cap_inf(), OrliczFunction::one_plus_inf(),
          OrliczFunction::table({{0, 0}, {0.5, 0}, {1, 0.25}, {2, 1.5}, {4, 6}})};
}

double rel(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace

TEST_CASE("distribution of sigma e^t is sigma / eps") {
  const auto alg = scalar_algebra();
  const auto d = tracial_density(alg);
  for (double sigma : {0.5, 1.0, 7.0}) {
    const auto x = tensor_fundamental(d, diag(alg, {sigma}), OrliczFunction::power(1));
    CHECK(x.closed_form());
    for (double eps : {1e-3, 0.2, 1.0, 30.0}) CHECK(rel(distribution_crossed(x, eps), sigma / eps) <= 1e-14);
  }
}

TEST_CASE("constants: lambda is inf below the norm and 0 above") {
  InstanceRng rng(11, 0);
  const auto alg = random_algebra(rng);
  const auto d = make_density(random_density(rng, alg));
  const auto b = random_element(rng, alg);
  const auto x = constant_element(d, b);
  const double n = b.op_norm();
  CHECK(std::isinf(distribution_crossed(x, 0.999 * n)));
  CHECK(distribution_crossed(x, n) == 0);
  CHECK(distribution_crossed(x, 2 * n) == 0);
  for (double eps : {0.01, 0.5, 1.0}) CHECK(rel(mu_crossed(x, eps), n) <= 1e-14);
  CHECK(mu_crossed(CrossedElement::zero(d), 0.3) == 0);
}

TEST_CASE("Haagerup elements obey the L^p law") {
  for (int trial = 0; trial < 30; ++trial) {
    InstanceRng rng(12, static_cast<std::uint64_t>(trial));
    const auto alg = random_algebra(rng);
    const auto d = make_density(random_density(rng, alg));
    const double p = std::vector<double>{1, 1.5, 2, 3}[static_cast<std::size_t>(trial % 4)];
    const HaagerupElement hx(random_element(rng, alg), p);
    const auto x = hx.to_crossed(d);
    const double norm = hx.lp_norm(*d);
    for (double t : log_grid(1e-3, 1e3, 20)) CHECK(rel(std::pow(t, 1.0 / p) * mu_crossed(x, t), norm) <= 1e-9);
    CHECK(membership(x, Space::Lp(p)).verdict == Verdict::member);
    if (p != 1) CHECK(membership(x, Space::L1()).verdict == Verdict::not_member);
  }
}

TEST_CASE("main identity examples") {
  const auto two = make_algebra({{1, 1.0}, {1, 1.0}});
  const auto m = verify_mainthm(diag(two, {2, 1}), OrliczFunction::power(2), 1.0);
  CHECK(m.rhs == doctest::Approx(5).epsilon(1e-15));
  CHECK(m.lhs == doctest::Approx(5).epsilon(1e-12));
  const auto one = verify_mainthm(diag(scalar_algebra(), {3}), OrliczFunction::power(1), 0.7);
  CHECK(rel(one.lhs, 3 / 0.7) <= 1e-14);
  CHECK(rel(one.rhs, 3 / 0.7) <= 1e-14);
  const auto cap = verify_mainthm(diag(two, {2, 1}), OrliczFunction::one_cap_inf(), 0.5);
  CHECK(std::isinf(cap.lhs));
  CHECK(std::isinf(cap.rhs));
}

TEST_CASE("main identity on random diagonal instances") {
  for (int trial = 0; trial < 40; ++trial) {
    InstanceRng rng(13, static_cast<std::uint64_t>(trial));
    const auto alg = random_commutative(rng);
    const auto a = random_diagonal(rng, alg);
    for (const auto& psi : psis())
      for (double eps : log_grid(0.05, 20, 7)) {
        const auto m = verify_mainthm(a, psi, eps);
        if (std::isinf(m.rhs)) {
          CHECK(std::isinf(m.lhs));
        } else {
          CHECK(std::abs(m.lhs - m.rhs) <= 1e-9 * (1 + m.rhs));
        }
      }
  }
}

TEST_CASE("grid evaluator agrees with closed forms within the quadrature bound") {
  for (int trial = 0; trial < 6; ++trial) {
    InstanceRng rng(14, static_cast<std::uint64_t>(trial));
    const auto alg = random_commutative(rng);
    const auto a = random_diagonal(rng, alg);
    const auto psi = psis()[static_cast<std::size_t>(trial) % 7];
    const auto x = tensor_fundamental(tracial_density(alg), a, psi);
    const auto& sp = x.grid_spectrum();
    for (double eps : log_grid(0.05, 20, 9)) {
      const double exact = distribution_crossed(x, eps);
      const double grid = sp.distribution(eps);
      if (std::isinf(exact)) {
        CHECK(std::isinf(grid));
      } else {
        CHECK(std::abs(grid - exact) <= grid_quadrature_bound(GridSpec{}, exact));
      }
    }
  }
}

TEST_CASE("luxemburg bridge") {
  CHECK(rel(lux_via_mu1(diag(scalar_algebra(), {3}), OrliczFunction::power(2)), 3) <= 1e-12);
  InstanceRng rng(15, 0);
  const auto alg = random_commutative(rng);
  const auto a = random_diagonal(rng, alg);
  double top = 0;
  for (const auto& at : singular_atoms(a)) top = std::max(top, at.value);
  CHECK(rel(lux_via_mu1(a, OrliczFunction::linf()), top) <= 1e-12);
  for (int trial = 0; trial < 50; ++trial) {
    InstanceRng r(16, static_cast<std::uint64_t>(trial));
    const auto al = random_commutative(r);
    const auto x = random_diagonal(r, al);
    for (const auto& psi : psis()) CHECK(rel(lux_via_mu1(x, psi), luxemburg_norm(x, psi)) <= 1e-8);
  }
}

TEST_CASE("amemiya bridge") {
  CHECK(rel(amemiya_via_lambda(diag(scalar_algebra(), {2}), OrliczFunction::power(1)), 2) <= 1e-8);
  CHECK(amemiya_via_lambda(AlgebraElement::zero(scalar_algebra()), OrliczFunction::power(2)) == 0);
  for (int trial = 0; trial < 30; ++trial) {
    InstanceRng r(17, static_cast<std::uint64_t>(trial));
    const auto al = random_commutative(r);
    const auto x = random_diagonal(r, al);
    for (const auto& psi : psis()) CHECK(rel(amemiya_via_lambda(x, psi), amemiya_norm(x, psi)) <= 1e-8);
  }
}

TEST_CASE("theta") {
  InstanceRng rng(18, 0);
  const auto alg = random_algebra(rng);
  const auto d = make_density(random_density(rng, alg));
  const HaagerupElement hx(random_element(rng, alg), 2.0);
  const auto x = hx.to_crossed(d);
  for (double s : {-1.3, 0.4, 2.0}) {
    const auto y = theta(x, s);
    for (double t : {0.1, 1.0, 5.0}) CHECK(rel(mu_crossed(y, t), std::exp(-s / 2) * mu_crossed(x, t)) <= 1e-12);
  }
  CHECK(max_abs_diff(theta(x, 0).at(0.3), x.at(0.3)) == 0);
  const auto c = constant_element(d, random_element(rng, alg));
  const auto cs = theta(c, 1.7);
  for (double t : {-3.0, 0.0, 4.0}) CHECK(max_abs_diff(cs.at(t), c.at(t)) <= 1e-15);

  // tau_A(theta_s x) = e^{-s} tau_A(x) on a grid element with finite trace.
  const auto b = random_element(rng, alg);
  const auto g = CrossedElement::sample(
      d, GridSpec{}, [&](double t) { return b * cplx(std::exp(2 * t) / (1 + std::exp(1.5 * t))); }, 2.0, 0.5);
  const double step = GridSpec{}.step();
  const cplx base = tau_A(g);
  for (int k : {-64, -3, 5, 64}) {
    const cplx shifted = tau_A(theta(g, k * step));
    CHECK(std::abs(shifted - std::exp(-k * step) * base) <= 1e-12 * std::abs(base));
  }
  CHECK_THROWS_AS(theta(g, 0.5 * step), DomainError);
}

TEST_CASE("membership examples") {
  InstanceRng rng(19, 0);
  const auto alg = random_algebra(rng, 2, 3);
  const auto d = make_density(random_density(rng, alg));
  const auto b = random_element(rng, alg);
  for (const auto& psi : {OrliczFunction::power(2), OrliczFunction::one_cap_inf(), OrliczFunction::one_plus_inf()}) {
    const auto x = embed_luxemburg(d, b, psi);
    CHECK_FALSE(x.closed_form());
    const auto r = membership(x, Space::with_psi(SpaceKind::Lpsi, psi));
    CHECK(r.verdict == Verdict::member);
    CHECK(r.max_deviation <= 1e-9);
  }
  const auto pi = constant_element(d, b);
  CHECK(membership(pi, Space::L1()).verdict == Verdict::not_member);
  const auto zero = CrossedElement::zero(d);
  CHECK(membership(zero, Space::L1()).verdict == Verdict::member);
  CHECK(membership(zero, Space::with_psi(SpaceKind::S_upper, OrliczFunction::power(2))).verdict == Verdict::member);

  // psi_1: h^{1/2} b h^{1/2} is in L^1 with trace tau(rho^{1/2} b rho^{1/2}).
  const auto l1 = embed_luxemburg(d, b, OrliczFunction::power(1));
  CHECK(membership(l1, Space::L1()).verdict == Verdict::member);
  const auto rh = d->apply([](double r) { return std::sqrt(r); }, 0.0);
  CHECK(std::abs(l1_trace(l1) - (rh * b * rh).trace()) <= 1e-12 * (1 + std::abs((rh * b * rh).trace())));

  // b = 1 gives phi_psi(h).
  const auto psi = OrliczFunction::power(3);
  const auto e1 = embed_luxemburg(d, AlgebraElement::identity(alg), psi);
  const auto hf = h_function(d, fundamental_lux(psi));
  for (double t : {-2.0, 0.0, 3.0}) CHECK(max_abs_diff(e1.at(t), hf.at(t)) <= 1e-12 * hf.at(t).op_norm());
}

TEST_CASE("factorisation chain through S spaces") {
  InstanceRng rng(20, 0);
  const auto alg = random_algebra(rng, 2, 3);
  const auto d = make_density(random_density(rng, alg));
  for (const auto& psi : {OrliczFunction::power(2), OrliczFunction::power(3), OrliczFunction::one_cap_inf()}) {
    const auto conj = conjugate(psi);
    const auto c = random_element(rng, alg);
    const auto cp = random_element(rng, alg);
    const auto a = CrossedElement::separable(
        d, {Term{c, sqrt_profile(fundamental_lux(psi)), Argument::density, Placement::right}});
    const auto b = CrossedElement::separable(
        d, {Term{cp, sqrt_profile(fundamental_orl(conj)), Argument::density, Placement::right}});
    CHECK(membership(a, Space::with_psi(SpaceKind::S_upper, psi)).verdict == Verdict::member);
    CHECK(membership(b, Space::with_psi(SpaceKind::S_lower, conj)).verdict == Verdict::member);
    CHECK(membership(b * a.adjoint(), Space::Lp(2)).verdict == Verdict::member);
    CHECK(membership(a * h_function(d, sqrt_profile(fundamental_orl(conj))), Space::Lp(2)).verdict ==
          Verdict::member);
  }
  const auto psi = OrliczFunction::power(2);
  const auto wrong = CrossedElement::separable(
      d, {Term{random_element(rng, alg), fundamental_lux(psi), Argument::density, Placement::right}});
  CHECK(membership(wrong, Space::with_psi(SpaceKind::S_upper, psi)).verdict == Verdict::not_member);
}

TEST_CASE("d_t identity") {
  InstanceRng rng(21, 0);
  const auto alg = random_algebra(rng, 2, 3);
  const auto d = make_density(random_density(rng, alg));
  const auto b = random_element(rng, alg);
  const double step = GridSpec{}.step();
  const auto x1 = embed_luxemburg(d, b, OrliczFunction::one_cap_inf());
  const auto r1 = verify_dt_identity(x1, OrliczFunction::one_cap_inf(), 1.0);
  CHECK(r1.max_rel_error <= 1e-14);
  CHECK(r1.d_norm == doctest::Approx(1).epsilon(1e-14));
  for (const auto& psi : {OrliczFunction::power(2), OrliczFunction::one_cap_inf(), OrliczFunction::one_plus_inf()}) {
    const auto x = embed_luxemburg(d, b, psi);
    for (int k : {1, 37, 300}) {
      const auto r = verify_dt_identity(x, psi, std::exp(-k * step));
      CHECK(r.max_rel_error <= 1e-6);
      CHECK(r.d_norm <= 1 + 1e-12);
    }
  }
  CHECK_THROWS_AS(verify_dt_identity(x1, OrliczFunction::power(2), 0.5), DomainError);
}

TEST_CASE("quasinorm mu_1") {
  for (int trial = 0; trial < 25; ++trial) {
    InstanceRng rng(22, static_cast<std::uint64_t>(trial));
    const auto alg = random_commutative(rng, 5);
    const auto d = make_density(random_diagonal_density(rng, alg));
    const auto psi = psis()[static_cast<std::size_t>(trial) % 8];
    const auto x = embed_luxemburg(d, random_diagonal(rng, alg), psi);
    const auto y = embed_luxemburg(d, random_diagonal(rng, alg), psis()[static_cast<std::size_t>(trial + 3) % 8]);
    CHECK(x.closed_form());
    CHECK(quasinorm_excess(x) <= 1e-12);
    CHECK(rel(quasinorm_mu1(x * cplx(2)), 2 * quasinorm_mu1(x)) <= 1e-14);
    CHECK(quasinorm_mu1(x + y) <= 2 * (quasinorm_mu1(x) + quasinorm_mu1(y)));
  }
  // HaagerupElement: mu_1 is the L^p norm.
  InstanceRng rng(23, 0);
  const auto alg = random_algebra(rng);
  const auto d = make_density(random_density(rng, alg));
  const HaagerupElement hx(random_element(rng, alg), 3);
  CHECK(rel(quasinorm_mu1(hx.to_crossed(d)), hx.lp_norm(*d)) <= 1e-12);
}

TEST_CASE("extreme spaces: intersection norm") {
  const auto alg = make_algebra({{3, 1.0}});
  const auto d = tracial_density(alg);
  CHECK(rel(norm_1capinf(*d, AlgebraElement::identity(alg)), 1) <= 1e-14);
  CHECK(norm_1capinf(*d, AlgebraElement::zero(alg)) == 0);
  for (int trial = 0; trial < 40; ++trial) {
    InstanceRng rng(24, static_cast<std::uint64_t>(trial));
    const auto al = random_commutative(rng);
    const auto dd = make_density(random_diagonal_density(rng, al));
    const auto b = random_element(rng, al, rng.log_uniform(0.01, 100));
    const double n = norm_1capinf(*dd, b);
    const double m1 = quasinorm_mu1(embed_luxemburg(dd, b, OrliczFunction::one_cap_inf()));
    CHECK(m1 / 16 <= n);
    CHECK(n <= m1 * (1 + 1e-12));
  }
}

TEST_CASE("extreme spaces: sum norm") {
  InstanceRng rng(25, 0);
  const auto alg = random_algebra(rng, 2, 3);
  const auto d = make_density(random_density(rng, alg));
  const auto one = iota_inf(d, AlgebraElement::identity(alg));
  CHECK(norm_1plusinf(one).upper <= 1 + 1e-14);
  const auto c = random_element(rng, alg);
  const auto rh = d->apply([](double r) { return std::sqrt(r); }, 0.0);
  double l1 = 0;
  for (const auto& at : singular_atoms(rh * c * rh)) l1 += at.weight * at.value;
  const auto nb = norm_1plusinf(iota_1(d, c));
  CHECK(nb.upper <= l1 * (1 + 1e-12));
  CHECK(nb.lower <= nb.upper);

  for (int trial = 0; trial < 15; ++trial) {
    InstanceRng r(26, static_cast<std::uint64_t>(trial));
    const auto al = random_commutative(r);
    const auto dd = make_density(random_diagonal_density(r, al));
    const auto x = iota_1(dd, random_diagonal(r, al)) + iota_2r(dd, random_diagonal(r, al)) +
                   iota_2l(dd, random_diagonal(r, al)) + iota_inf(dd, random_diagonal(r, al));
    const auto bounds = norm_1plusinf(x);
    CHECK(bounds.lower <= bounds.upper);
    const auto xc = x.to_crossed();
    CHECK(membership(xc, Space::with_psi(SpaceKind::Lorlicz, OrliczFunction::one_plus_inf())).verdict ==
          Verdict::member);
    for (double eps : log_grid(1e-3, 4, 15)) CHECK(0.25 * eps * mu_crossed(xc, eps) <= bounds.upper);
  }

  // Tracial model: the bounded/summable split is one feasible decomposition.
  const auto tal = make_algebra({{2, 1.0}, {1, 2.0}});
  const auto td = tracial_density(tal);
  InstanceRng r2(27, 0);
  const auto a = random_element(r2, tal, 2.0);
  const auto split = split_one_plus_inf(a);
  const auto z = AlgebraElement::zero(tal);
  const double cost = split_costs(*td, split.summable, z, z, split.bounded).weighted(1.0);
  CHECK(norm_1plusinf(iota_inf(td, a)).upper <= cost * (1 + 1e-12));
}

TEST_CASE("iota images lie in the sum space") {
  InstanceRng rng(28, 0);
  const auto alg = random_algebra(rng, 2, 3);
  const auto d = make_density(random_density(rng, alg));
  const auto space = Space::with_psi(SpaceKind::Lorlicz, OrliczFunction::one_plus_inf());
  for (const auto& x : {iota_1(d, random_element(rng, alg)), iota_2r(d, random_element(rng, alg)),
                        iota_2l(d, random_element(rng, alg)), iota_inf(d, random_element(rng, alg))})
    CHECK(membership(x.to_crossed(), space).verdict == Verdict::member);
  // phi_psi(h) tilde phi_{psi*}(h) = h cellwise.
  for (const auto& psi : psis()) {
    const auto prod = h_function(d, fundamental_lux(psi)) * h_function(d, fundamental_orl(conjugate(psi)));
    const auto h = h_function(d, power_profile(1.0));
    const auto& pc = prod.grid_data().cells;
    const auto hc = h.to_grid().grid_data().cells;
    CHECK(max_relative_deviation(pc, hc, 1.0) <= 1e-9);
  }
}

TEST_CASE("pairing") {
  const auto alg = make_algebra({{2, 1.0}});
  const auto d = tracial_density(alg);
  const auto psi = OrliczFunction::power(2);
  const auto half = h_function(d, power_profile(0.5));
  const auto r = pairing_duality(half, half, psi);
  CHECK(std::abs(r.value - cplx(1)) <= 1e-12);
  CHECK(r.ok);
  const auto zero = CrossedElement::zero(d);
  CHECK(std::abs(pairing_duality(zero, half, psi).value) == 0);

  for (int trial = 0; trial < 6; ++trial) {
    InstanceRng rng(29, static_cast<std::uint64_t>(trial));
    const auto al = random_commutative(rng, 4);
    const auto dd = make_density(random_diagonal_density(rng, al));
    const auto p = psis()[static_cast<std::size_t>(trial) % 7];
    const auto c = random_element(rng, al), cp = random_element(rng, al);
    const auto a = CrossedElement::separable(dd, {Term{c, fundamental_lux(p), Argument::density, Placement::left}});
    const auto b = CrossedElement::separable(
        dd, {Term{cp, fundamental_orl(conjugate(p)), Argument::density, Placement::right}});
    const auto rep = pairing_duality(a, b, p);
    CHECK(rep.ok);
    const cplx expect = (cp * dd->rho() * c).trace();
    CHECK(std::abs(rep.value - expect) <= 1e-9 * (1 + std::abs(expect)));
  }
  const auto pi = constant_element(d, AlgebraElement::identity(alg));
  CHECK_THROWS_AS(pairing_duality(pi, half, psi), DomainError);
}

TEST_CASE("triple-norm probe") {
  const auto alg = scalar_algebra(2.0);
  const auto d = tracial_density(alg);
  CHECK(probe_triple_norm(AlgebraElement::zero(alg), d, OrliczFunction::power(2), 10, 1).sup_ratio == 0);
  // Scalar algebra, psi_1: the element is m h, every probe attains |m| = ||m h||_1.
  const auto m = AlgebraElement::diagonal(alg, {0.8});
  const auto pr = probe_triple_norm(m, d, OrliczFunction::power(1), 20, 2);
  CHECK(rel(pr.mu1, 0.8) <= 1e-12);
  CHECK(rel(pr.sup_ratio, 0.8) <= 1e-12);
  CHECK(pr.bound_3mu1_ok);

  InstanceRng rng(30, 0);
  const auto al = random_algebra(rng, 2, 3);
  const auto dd = make_density(random_density(rng, al));
  const auto rep = probe_triple_norm(random_element(rng, al), dd, OrliczFunction::power(2), 100, 3);
  CHECK(rep.bound_3mu1_ok);
}

TEST_CASE("normability integral") {
  InstanceRng rng(31, 0);
  const auto alg = random_algebra(rng);
  const auto d = make_density(random_density(rng, alg));
  const HaagerupElement h2(random_element(rng, alg), 2);
  const auto r2 = normability_norm(h2.to_crossed(d), OrliczFunction::power(2));
  CHECK(rel(r2.integral, 2 * h2.lp_norm(*d)) <= 1e-8);
  CHECK(r2.lower_ok);
  CHECK(r2.worst_dilation_excess <= 1e-9);
  const HaagerupElement h4(random_element(rng, alg), 4);
  const auto r4 = normability_norm(h4.to_crossed(d), OrliczFunction::power(4));
  CHECK(rel(r4.integral, 4.0 / 3.0 * h4.lp_norm(*d)) <= 1e-8);
  CHECK(r4.upper_ok);
  CHECK(normability_norm(CrossedElement::zero(d), OrliczFunction::power(2)).integral == 0);
  CHECK_THROWS_AS(normability_norm(h2.to_crossed(d), OrliczFunction::power(1)), DomainError);
}

TEST_CASE("Orlicz over Luxemburg multiplier is bounded") {
  for (const auto& psi : psis()) {
    const auto mb = multiplier_bounds(psi);
    CHECK(mb.ratio_sup <= 2 + 1e-9);
    CHECK(mb.inverse_sup <= 1 + 1e-9);
  }
}

TEST_CASE("serial and parallel grid kernels agree") {
  InstanceRng rng(32, 0);
  const auto alg = random_algebra(rng);
  const auto d = make_density(random_density(rng, alg));
  const auto x = embed_luxemburg(d, random_element(rng, alg), OrliczFunction::power(2)).to_grid();
  const auto a = grid_weighted_values(x.grid_data());
  const auto b = grid_weighted_values_serial(x.grid_data());
  CHECK(a.sigma == b.sigma);
  CHECK(a.measure == b.measure);
  const auto& cells = x.grid_data().cells;
  std::vector<AlgebraElement> shifted(cells.begin() + 1, cells.end());
  std::vector<AlgebraElement> head(cells.begin(), cells.end() - 1);
  CHECK(max_relative_deviation(shifted, head, 0.9) == max_relative_deviation_serial(shifted, head, 0.9));
}
