#include <cmath>

#include "doctest.h"
#include "orlab/numerics.hpp"
#include "orlab/random_instances.hpp"
#include "orlab/tracial.hpp"

using namespace olab;

namespace {

AlgebraPtr two_atoms() { return make_algebra({{1, 1.0}, {1, 1.0}}); }
AlgebraElement diag(const AlgebraPtr& alg, std::vector<double> d) { return AlgebraElement::diagonal(alg, d); }

std::vector<OrliczFunction> psis() {
  return {OrliczFunction::power(1), OrliczFunction::power(1.5), OrliczFunction::power(2), OrliczFunction::power(4),
          OrliczFunction::linf(), OrliczFunction::one_cap_inf(), OrliczFunction::one_plus_inf(),
          OrliczFunction::table({{0, 0}, {0.5, 0}, {1, 0.25}, {2, 1.5}, {4, 6}})};
}

}  // namespace

TEST_CASE("svf examples") {
  const auto a = diag(two_atoms(), {3, 1});
  const auto mu = svf(a);
  CHECK(mu(0) == 3);
  CHECK(mu(0.999) == 3);
  CHECK(mu(1) == 1);
  CHECK(mu(1.5) == 1);
  CHECK(mu(2) == 0);
  CHECK(mu(10) == 0);
  const auto one = make_algebra({{1, 0.25}});
  const auto m2 = svf(diag(one, {2}));
  CHECK(m2(0.2) == 2);
  CHECK(m2(0.25) == 0);
  InstanceRng rng(1, 0);
  const auto alg = random_algebra(rng);
  const auto x = random_element(rng, alg);
  const auto mx = svf(x), mxs = svf(x.adjoint());
  for (double t : mx.left_endpoints()) CHECK(mxs(t * (1 + 1e-9)) == doctest::Approx(mx(t * (1 + 1e-9))).epsilon(1e-12));
  CHECK(mx.support() == doctest::Approx(alg->total_measure()).epsilon(1e-14));
}

TEST_CASE("distribution examples") {
  const auto a = diag(two_atoms(), {3, 1});
  CHECK(distribution(a, 2) == 1);
  CHECK(distribution(a, 3) == 0);
  CHECK(distribution(a, 0) == 2);
  InstanceRng rng(2, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg);
    const auto mu = svf(x);
    for (double t : log_grid(1e-3, alg->total_measure() * 0.999, 30)) CHECK(distribution(x, mu(t)) <= t * (1 + 1e-14));
    CHECK(mu(0) == doctest::Approx(x.op_norm()).epsilon(1e-12));
  }
}

TEST_CASE("trace formula") {
  const auto tf = trace_formula_check(diag(two_atoms(), {3, 1}));
  CHECK(tf.lhs == doctest::Approx(4));
  CHECK(tf.rhs == doctest::Approx(4));
  const auto z = trace_formula_check(AlgebraElement::zero(two_atoms()));
  CHECK(z.lhs == 0);
  CHECK(z.rhs == 0);
  InstanceRng rng(3, 0);
  const auto alg = make_algebra({{4, 0.5}});
  const auto h = random_hermitian(rng, alg);
  const auto r = trace_formula_check(h);
  CHECK(std::abs(r.lhs - r.rhs) <= 1e-10 * r.lhs);
}

TEST_CASE("luxemburg examples") {
  const auto one = make_algebra({{1, 1.0}});
  CHECK(luxemburg_norm(diag(one, {3}), OrliczFunction::power(2)) == doctest::Approx(3).epsilon(1e-14));
  CHECK(luxemburg_norm(diag(two_atoms(), {1, 1}), OrliczFunction::power(1)) == doctest::Approx(2).epsilon(1e-14));
  CHECK(luxemburg_norm(AlgebraElement::zero(one), OrliczFunction::power(2)) == 0);
  InstanceRng rng(4, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg);
    CHECK(luxemburg_norm(x, OrliczFunction::linf()) == doctest::Approx(x.op_norm()).epsilon(1e-13));
    // L^p norms in closed form.
    for (double p : {1.0, 2.0, 3.0}) {
      double s = 0;
      for (const auto& at : singular_atoms(x)) s += at.weight * std::pow(at.value, p);
      CHECK(luxemburg_norm(x, OrliczFunction::power(p)) == doctest::Approx(std::pow(s, 1 / p)).epsilon(1e-13));
    }
    for (const auto& psi : psis())
      CHECK(luxemburg_norm(svf(x), psi) == doctest::Approx(luxemburg_norm(x, psi)).epsilon(1e-10));
  }
}

TEST_CASE("luxemburg triangle inequality") {
  InstanceRng rng(5, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg), y = random_element(rng, alg);
    for (const auto& psi : psis()) {
      const double lhs = luxemburg_norm(x + y, psi);
      const double rhs = luxemburg_norm(x, psi) + luxemburg_norm(y, psi);
      CHECK(lhs <= rhs * (1 + 1e-10));
    }
  }
}

TEST_CASE("amemiya examples") {
  const auto one = make_algebra({{1, 1.0}});
  CHECK(amemiya_norm(diag(one, {1}), OrliczFunction::power(2)) == doctest::Approx(2).epsilon(1e-12));
  CHECK(amemiya_norm(AlgebraElement::zero(one), OrliczFunction::power(2)) == 0);
  InstanceRng rng(6, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg);
    CHECK(amemiya_norm(x, OrliczFunction::power(1)) == doctest::Approx(trace_formula_check(x).lhs).epsilon(1e-10));
  }
}

TEST_CASE("amemiya sandwich") {
  InstanceRng rng(7, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg, rng.log_uniform(0.01, 100));
    for (const auto& psi : psis()) {
      const double lux = luxemburg_norm(x, psi), am = amemiya_norm(x, psi);
      CHECK(lux <= am * (1 + 1e-12));
      CHECK(am <= 2 * lux * (1 + 1e-12));
    }
  }
}

TEST_CASE("dual-sup oracle agrees with amemiya") {
  const auto one = make_algebra({{1, 1.0}});
  CHECK(orlicz_norm_oracle(diag(one, {1}), OrliczFunction::power(2)) == doctest::Approx(2).epsilon(1e-10));
  CHECK(orlicz_norm_oracle(AlgebraElement::zero(one), OrliczFunction::power(2)) == 0);
  CHECK_THROWS_AS(orlicz_norm_oracle(AlgebraElement::identity(make_algebra({{2, 1.0}})), OrliczFunction::power(2)),
                  DomainError);
  InstanceRng rng(8, 0);
  for (int trial = 0; trial < 60; ++trial) {
    const auto alg = random_commutative(rng, 8);
    const auto f = random_diagonal(rng, alg, 0.01, 10);
    for (const auto& psi : psis()) {
      const double am = amemiya_norm(f, psi), orc = orlicz_norm_oracle(f, psi);
      CHECK_MESSAGE(std::abs(am - orc) <= 1e-5 * am, psi.label() << " " << am << " " << orc);
    }
  }
}

TEST_CASE("Hoelder inequality for the dual pairing") {
  InstanceRng rng(9, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto alg = random_commutative(rng, 8);
    const auto f = random_diagonal(rng, alg, 0.01, 10), g = random_diagonal(rng, alg, 0.01, 10);
    for (const auto& psi : psis()) {
      const double lhs = std::abs((f * g).trace());
      const double rhs = orlicz_norm_oracle(f, conjugate(psi)) * luxemburg_norm(g, psi);
      CHECK(lhs <= rhs * (1 + 1e-9));
    }
  }
}

TEST_CASE("psi commutes with mu") {
  const auto a = diag(two_atoms(), {3, 1});
  const auto mp = svf(a).map([](double v) { return v * v; });
  CHECK(mp(0.5) == 9);
  CHECK(mp(1.5) == 1);
  CHECK(psi_svf_commute_check(a, OrliczFunction::power(2)).ok);
  InstanceRng rng(10, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg, 0.3);
    for (const auto& psi : psis()) {
      const auto r = psi_svf_commute_check(x, psi);
      CHECK_MESSAGE(r.ok, psi.label() << " err " << r.max_error);
    }
    CHECK(svf(x).integral([](double v) { return v; }) == doctest::Approx(trace_formula_check(x).lhs).epsilon(1e-10));
  }
}

TEST_CASE("split_one_plus_inf") {
  const auto s = split_one_plus_inf(diag(two_atoms(), {3, 0.5}));
  CHECK(s.bounded.block(0)(0, 0).real() == doctest::Approx(1));
  CHECK(s.bounded.block(1)(0, 0).real() == doctest::Approx(0.5));
  CHECK(s.summable.block(0)(0, 0).real() == doctest::Approx(2));
  CHECK(std::abs(s.summable.block(1)(0, 0)) < 1e-15);
  InstanceRng rng(11, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto alg = random_algebra(rng);
    const auto x = random_element(rng, alg, 1.0);
    const auto sp = split_one_plus_inf(x);
    CHECK(max_abs_diff(sp.bounded + sp.summable, x) < 1e-12);
    CHECK(sp.bounded.op_norm() <= 1 + 1e-12);
    double direct = 0;
    for (const auto& at : singular_atoms(x)) direct += at.weight * std::max(at.value - 1, 0.0);
    CHECK(trace_formula_check(sp.summable).lhs == doctest::Approx(direct).epsilon(1e-10));
    // Small elements are left alone.
    const auto small = x * cplx(0.9 / x.op_norm());
    const auto ss = split_one_plus_inf(small);
    CHECK(max_abs_diff(ss.bounded, small) < 1e-12);
    CHECK(ss.summable.op_norm() < 1e-12);
  }
  // 2u with u unitary splits as (u, u).
  const auto alg = make_algebra({{2, 1.0}});
  CMatrix u(2, 2);
  u(0, 1) = cplx(0, 1);
  u(1, 0) = cplx(0, 1);
  const AlgebraElement U(alg, {u});
  const auto su = split_one_plus_inf(U * cplx(2));
  CHECK(max_abs_diff(su.bounded, U) < 1e-12);
  CHECK(max_abs_diff(su.summable, U) < 1e-12);
}

TEST_CASE("Fack-Kosaki properties") {
  InstanceRng rng(12, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto alg = random_algebra(rng);
    const auto a = random_element(rng, alg), b = random_element(rng, alg);
    CHECK(fk_subadditivity(a, b) <= 1e-10);
    CHECK(fk_submultiplicativity(a, b) <= 1e-10);
    CHECK(fk_left_bound(a, b) <= 1e-10);
    const auto p = random_positive(rng, alg), q = p + random_positive(rng, alg);
    CHECK(fk_monotone(p, q) <= 1e-10);
    CHECK(fk_functional(a, [](double v) { return v * v + 0.5; }) <= 1e-10);
    CHECK(fk_functional(a, [](double v) { return std::sqrt(v); }) <= 1e-10);
    const auto mu = svf(a), mu3 = svf(a * cplx(0, -3));
    for (double t : mu.left_endpoints()) CHECK(mu3(t * (1 + 1e-9)) == doctest::Approx(3 * mu(t * (1 + 1e-9))).epsilon(1e-12));
  }
}

TEST_CASE("step function arithmetic") {
  const auto f = StepFunction::from_atoms({{1, 0.5}, {3, 1.0}, {1, 0.25}});
  CHECK(f.values().size() == 2);
  CHECK(f.ends()[0] == 1.0);
  CHECK(f.ends()[1] == 1.75);
  CHECK(f.integral() == doctest::Approx(3.75));
  CHECK(f.integral_to(1.25) == doctest::Approx(3.25));
  CHECK(f.distribution(1) == 1.0);
  CHECK(f.distribution(0.5) == 1.75);
  const auto g = StepFunction::from_atoms({{2, 1}}, 1.0);
  CHECK(std::isinf(g.distribution(0.5)));
  CHECK(std::isinf(g.integral()));
  CHECK(g.integral([](double v) { return std::max(v - 1, 0.0); }) == 1.0);
}
