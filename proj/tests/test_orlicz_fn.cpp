#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "orlab/numerics.hpp"
#include "orlab/orlicz_function.hpp"

using namespace olab;

namespace {

std::vector<OrliczFunction> builtins() {
  return {OrliczFunction::power(1), OrliczFunction::power(1.5), OrliczFunction::power(2), OrliczFunction::power(4),
          OrliczFunction::linf(), OrliczFunction::one_cap_inf(), OrliczFunction::one_plus_inf()};
}

OrliczFunction sample_table() {
  return OrliczFunction::table({{0, 0}, {0.5, 0}, {1, 0.25}, {2, 1.5}, {4, 6}});
}

double rel(double a, double b) {
  if (std::isinf(a) && std::isinf(b)) return 0.0;
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

TEST_CASE("inverse examples") {
  CHECK(inverse(OrliczFunction::power(2), 4.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(inverse(OrliczFunction::one_cap_inf(), 0.5) == 0.5);
  CHECK(inverse(OrliczFunction::one_cap_inf(), 3.0) == 1.0);
  CHECK(inverse(OrliczFunction::linf(), 0.0) == 1.0);
  // Flat segment resolves to its right end.
  CHECK(inverse(sample_table(), 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(inverse(sample_table(), 1.5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("inverse keeps relative precision at tiny levels") {
  // The conjugate of the sample table is u/2 near 0.
  const auto conj = conjugate(sample_table());
  for (double u : {1e-300, 1e-200, 1e-100, 1e-30}) CHECK(inverse(conj, u) == doctest::Approx(2 * u).epsilon(1e-14));
  const auto evaluator = OrliczFunction::from_evaluator("3t^2", [](double t) { return 3 * t * t; }, kInf);
  for (double u : {1e-280, 1e-120, 1e-12}) CHECK(inverse(evaluator, u) == doctest::Approx(std::sqrt(u / 3)).epsilon(1e-12));
  // tilde phi(t) = t (psi*)^{-1}(1/t) -> 2 as t -> inf.
  CHECK(fundamental_orl(sample_table()).at_infinity() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("inverse composition bounds") {
  auto fns = builtins();
  fns.push_back(sample_table());
  for (const auto& psi : fns) {
    for (double t : log_grid(1e-4, 1e4, 41)) {
      const double s = inverse(psi, t);
      if (std::isfinite(s)) CHECK(psi(s) <= t * (1 + 1e-12));
      const double pt = psi(t);
      if (std::isfinite(pt)) CHECK(inverse(psi, pt) >= t * (1 - 1e-12));
    }
  }
}

TEST_CASE("conjugate closed forms") {
  const auto c2 = conjugate(OrliczFunction::power(2));
  for (double u : {0.1, 1.0, 3.0, 10.0}) CHECK(c2(u) == doctest::Approx(u * u / 4).epsilon(1e-14));
  CHECK(conjugate(OrliczFunction::one_cap_inf()).kind() == OrliczKind::one_plus_inf);
  CHECK(conjugate(OrliczFunction::one_plus_inf()).kind() == OrliczKind::one_cap_inf);
  CHECK(conjugate(OrliczFunction::power(1)).kind() == OrliczKind::linf);
  CHECK(conjugate(OrliczFunction::linf()).kind() == OrliczKind::power);
  // sup_{v <= 1}(uv - v) = max(0, u - 1).
  const auto num = numeric_conjugate(OrliczFunction::one_cap_inf());
  for (double u : {0.5, 1.0, 2.5, 7.0}) CHECK(num(u) == doctest::Approx(std::max(0.0, u - 1)).epsilon(1e-9));
}

TEST_CASE("table conjugate agrees with the numeric grid supremum") {
  const auto psi = sample_table();
  const auto exact = conjugate(psi);
  const auto num = numeric_conjugate(psi);
  for (double u : {0.1, 0.5, 1.0, 1.5, 2.0, 2.2, 2.25}) CHECK(rel(exact(u), num(u)) < 1e-9);
  CHECK(std::isinf(exact(2.3)));  // past the final slope
  CHECK(std::isinf(num(2.3)));
  const auto bounded = OrliczFunction::table({{0, 0}, {1, 1}, {2, 3}}, 3.0);
  const auto bc = conjugate(bounded);
  const auto bn = numeric_conjugate(bounded);
  for (double u : {0.5, 1.5, 2.0, 5.0, 40.0}) CHECK(rel(bc(u), bn(u)) < 1e-9);
}

TEST_CASE("biconjugate returns the function") {
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    const auto psi = OrliczFunction::power(p);
    const auto bi = conjugate(conjugate(psi));
    for (double t : log_grid(0.01, 100, 25)) CHECK(rel(bi(t), psi(t)) < 1e-6);
  }
  const auto tbl = sample_table();
  const auto bi = conjugate(conjugate(tbl));
  for (double t : log_grid(0.01, 100, 25)) CHECK(rel(bi(t), tbl(t)) < 1e-12);
  // Fully numeric route.
  const auto psi3 = OrliczFunction::power(3);
  const auto nbi = numeric_conjugate(conjugate(psi3));
  for (double t : {0.05, 0.3, 1.0, 2.0, 7.0}) CHECK(std::abs(nbi(t) - psi3(t)) <= 1e-6 * std::max(1.0, psi3(t)));
}

TEST_CASE("Young inequality gap") {
  auto fns = builtins();
  fns.push_back(sample_table());
  for (const auto& psi : fns) {
    const auto conj = conjugate(psi);
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= 40; ++j) {
        const double s = 10.0 * i / 40, t = 10.0 * j / 40;
        const double lhs = psi(s) + conj(t) - s * t;
        CHECK(lhs >= -1e-10 * (1 + s * t));
      }
  }
}

TEST_CASE("alpha psi(beta) <= 1 iff beta phi(alpha) <= 1") {
  auto fns = builtins();
  fns.push_back(sample_table());
  const auto grid = log_grid(0.013, 77.0, 50);
  for (const auto& psi : fns) {
    const auto phi = fundamental_lux(psi);
    for (double a : grid)
      for (double b : grid) {
        const double l = ext_mul(a, psi(b));
        const double r = b * phi(a);
        if (std::abs(l - 1) < 1e-12 || std::abs(r - 1) < 1e-12) continue;
        CHECK_MESSAGE((l <= 1) == (r <= 1), psi.label() << " a=" << a << " b=" << b);
      }
  }
}

TEST_CASE("fundamental_lux examples") {
  for (double p : {1.0, 2.0, 3.0})
    for (double t : {0.1, 1.0, 9.0})
      CHECK(fundamental_lux(OrliczFunction::power(p))(t) == doctest::Approx(std::pow(t, 1 / p)).epsilon(1e-14));
  const auto cap = fundamental_lux(OrliczFunction::one_cap_inf());
  const auto plus = fundamental_lux(OrliczFunction::one_plus_inf());
  for (double t : {0.25, 1.0, 4.0}) {
    CHECK(cap(t) == doctest::Approx(std::max(1.0, t)));
    // Luxemburg fundamental function of psi_{1+inf}: 1 / (1 + 1/t).
    CHECK(plus(t) == doctest::Approx(t / (1 + t)));
    // min(1, t) is the Orlicz-norm fundamental function of the same psi.
    CHECK(fundamental_orl(OrliczFunction::one_plus_inf())(t) == doctest::Approx(std::min(1.0, t)));
  }
}

TEST_CASE("generic and closed-form fundamental paths agree") {
  const auto tbl_sq = OrliczFunction::table({{0, 0}, {1, 1}, {2, 4}, {3, 9}});
  const auto ev = OrliczFunction::from_evaluator("t^2", [](double t) { return t * t; }, kInf);
  const auto phi_ev = fundamental_lux(ev);
  for (double t : {0.01, 0.5, 2.0, 100.0}) CHECK(phi_ev(t) == doctest::Approx(std::sqrt(t)).epsilon(1e-12));
  const auto phi_t = fundamental_lux(tbl_sq);
  CHECK(phi_t(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double c : {0.3, 1.0, 4.0}) {
    const auto phi = fundamental_lux(OrliczFunction::power(2));
    CHECK(phi.upper_level(c) == doctest::Approx(phi.upper_level_bisect(c)).epsilon(1e-13));
  }
}

TEST_CASE("fundamental_orl sandwich and product identity") {
  auto fns = builtins();
  fns.push_back(sample_table());
  for (const auto& psi : fns) {
    const auto phi = fundamental_lux(psi);
    const auto tphi = fundamental_orl(psi);
    const auto tphi_conj = fundamental_orl(conjugate(psi));
    for (double t : log_grid(1e-6, 1e6, 61)) {
      CHECK(phi(t) <= tphi(t) * (1 + 1e-12));
      CHECK(tphi(t) <= 2 * phi(t) * (1 + 1e-12));
      CHECK(rel(phi(t) * tphi_conj(t), t) <= 1e-9 * std::max(1.0, t));
    }
  }
  CHECK(fundamental_orl(OrliczFunction::power(1))(3.7) == doctest::Approx(3.7).epsilon(1e-15));
  const auto t2 = fundamental_orl(OrliczFunction::power(2));
  CHECK(t2(1.0) >= 1.0);
  CHECK(t2(1.0) <= 2.0 + 1e-12);
  CHECK(fundamental_lux(OrliczFunction::power(2))(4.0) * fundamental_orl(conjugate(OrliczFunction::power(2)))(4.0) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("produced fundamental functions are quasi-concave") {
  auto fns = builtins();
  fns.push_back(sample_table());
  const auto grid = log_grid(1e-8, 1e8, 161);
  for (const auto& psi : fns)
    for (const auto& phi : {fundamental_lux(psi), fundamental_orl(psi)})
      for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double a = phi(grid[i]), b = phi(grid[i + 1]);
        CHECK(b >= a * (1 - 1e-12));
        CHECK(b / grid[i + 1] <= a / grid[i] * (1 + 1e-12));
      }
}

TEST_CASE("dilation") {
  for (double p : {1.0, 2.0, 4.0})
    for (double t : {0.5, 2.0})
      CHECK(dilation(OrliczFunction::power(p), t) == doctest::Approx(std::pow(t, 1 / p)).epsilon(1e-12));
  for (const auto& psi : builtins()) CHECK(dilation(psi, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  const auto min1 = fundamental_orl(OrliczFunction::one_plus_inf());  // min(1, t)
  CHECK(dilation(min1, 0.5) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(dilation(OrliczFunction::one_plus_inf(), 0.5) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Boyd normability") {
  const auto r2 = boyd_normability(OrliczFunction::power(2));
  CHECK(r2.normable);
  CHECK(std::abs(r2.alpha_lower - 0.5) < 0.02);
  CHECK(std::abs(r2.constant - 2.0) < 1e-3);
  const auto r1 = boyd_normability(OrliczFunction::power(1));
  CHECK_FALSE(r1.normable);
  CHECK(std::isinf(r1.constant));
  // k_{psi*}(t) = t^{3/4} for p = 4, so C = 4/3.
  const auto r4 = boyd_normability(OrliczFunction::power(4));
  CHECK(r4.normable);
  CHECK(std::abs(r4.alpha_lower - 0.75) < 0.02);
  CHECK(std::abs(r4.constant - 4.0 / 3.0) < 1e-3);
}

TEST_CASE("growth constant") {
  for (const auto& psi : {OrliczFunction::power(1), OrliczFunction::power(2), OrliczFunction::one_cap_inf()}) {
    const auto g = growth_constant(psi);
    CHECK(g.k == doctest::Approx(1.0));
    CHECK(g.bound_holds);
  }
}

TEST_CASE("table validation names the offending knot") {
  try {
    OrliczFunction::table({{0, 0}, {1, 2}, {2, 3}, {3, 10}});
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }
  CHECK_THROWS_AS(OrliczFunction::table({{0, 0}, {1, 0}}), SchemaError);
  CHECK_THROWS_AS(OrliczFunction::table({{0, 1}, {1, 2}}), SchemaError);
}
