#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "orlab/geometry.hpp"
#include "orlab/numerics.hpp"

using namespace olab;

namespace {

QuasiConcaveProfile min1() { return sample_profile(fundamental_orl(OrliczFunction::one_plus_inf())); }
QuasiConcaveProfile max1() { return sample_profile(fundamental_lux(OrliczFunction::one_cap_inf())); }
QuasiConcaveProfile root() { return sample_profile(fundamental_lux(OrliczFunction::power(2))); }

}  // namespace

TEST_CASE("default grid contains the decades") {
  const auto g = default_profile_grid();
  CHECK(g.size() == 601);
  CHECK(g.front() == 1e-9);
  CHECK(g.back() == 1e9);
  CHECK(std::find(g.begin(), g.end(), 1.0) != g.end());
  CHECK(std::find(g.begin(), g.end(), 1e3) != g.end());
}

TEST_CASE("profile limits") {
  const auto m = min1();
  CHECK(m.limit == 1.0);
  CHECK(m.plateau == 1.0);
  CHECK(m.at_zero == 0.0);
  const auto x = max1();
  CHECK(x.at_zero == 1.0);
  CHECK(std::isinf(x.limit));
  const auto raw = profile_from_knots(m.t, m.phi);
  CHECK(raw.limit == 1.0);
  CHECK(raw.plateau == 1.0);
  CHECK(raw.at_zero == 0.0);
  const auto raw2 = profile_from_knots(x.t, x.phi);
  CHECK(raw2.at_zero == 1.0);
  CHECK(std::isinf(raw2.limit));
}

TEST_CASE("concave majorant examples") {
  for (const auto& p : {min1(), root()}) {
    const auto h = concave_majorant(p);
    for (std::size_t i = 0; i < p.t.size(); ++i) CHECK(h.phi[i] == doctest::Approx(p.phi[i]).epsilon(1e-12));
  }
  // Chord-limit oracle: hull of max(1, t) tends to 1 + t.
  const auto h = concave_majorant(max1());
  for (std::size_t i = 0; i < h.t.size(); ++i) CHECK(h.phi[i] == doctest::Approx(1 + h.t[i]).epsilon(1e-8));
  CHECK(h(2.5) == doctest::Approx(3.5).epsilon(1e-8));
}

TEST_CASE("concave majorant idempotence and sandwich") {
  std::vector<QuasiConcaveProfile> ps{min1(), max1(), root(),
                                      sample_profile(fundamental_lux(OrliczFunction::one_plus_inf())),
                                      sample_profile(fundamental_orl(OrliczFunction::power(3)))};
  // Staircase-like quasi-concave profile.
  {
    std::vector<double> t = default_profile_grid(), v;
    for (double x : t) v.push_back(std::min(std::max(1.0, std::floor(std::log10(x) + 10) / 4), x * 10));
    // Force quasi-concavity by replacing v with its running min of v/t times t.
    double r = kInf;
    for (std::size_t i = 0; i < t.size(); ++i) {
      r = std::min(r, v[i] / t[i]);
      v[i] = std::max(i ? v[i - 1] : 0.0, std::min(v[i], r * t[i]));
    }
    ps.push_back(profile_from_knots(t, v));
  }
  for (const auto& p : ps) {
    const auto h = concave_majorant(p);
    const auto hh = concave_majorant(h);
    for (std::size_t i = 0; i < p.t.size(); ++i) {
      CHECK(hh.phi[i] == doctest::Approx(h.phi[i]).epsilon(1e-12));
      CHECK(h.phi[i] >= p.phi[i] * (1 - 1e-12));
      CHECK(h.phi[i] <= 2 * p.phi[i] * (1 + 1e-12));
    }
    // Concavity of the output chain.
    for (std::size_t i = 1; i + 1 < h.t.size(); ++i) {
      const double s0 = (h.phi[i] - h.phi[i - 1]) / (h.t[i] - h.t[i - 1]);
      const double s1 = (h.phi[i + 1] - h.phi[i]) / (h.t[i + 1] - h.t[i]);
      const double round = 8 * 2.3e-16 * h.phi[i + 1] / (h.t[i + 1] - h.t[i]);
      CHECK(s1 <= s0 + 1e-9 * std::abs(s0) + round);
    }
  }
}

TEST_CASE("majorant rejects non-quasi-concave input") {
  std::vector<double> t{1, 2, 3}, v{1, 0.5, 1};
  CHECK_THROWS_AS(profile_from_knots(t, v), DomainError);
  std::vector<double> w{1, 3, 9};
  CHECK_THROWS_AS(profile_from_knots(t, w), DomainError);
}

TEST_CASE("regularizing map properties") {
  const double c = 1.0, eps = 0.5;
  const auto g = log_grid(1e-6, 1e6, 200);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g[i], gx = regularizing_map(x, eps, c);
    CHECK(gx <= x);
    CHECK(gx < c);
    if (i) {
      const double px = g[i - 1], pg = regularizing_map(px, eps, c);
      CHECK(gx > pg);
      CHECK(gx / x <= pg / px * (1 + 1e-15));
    }
  }
}

TEST_CASE("regularize min(1,t)") {
  const auto p = concave_majorant(min1());
  const auto r = regularize(p, 0.5);
  CHECK(std::isinf(r.phi0.plateau));
  CHECK(r.phi0.limit == 1.0);
  for (std::size_t i = 1; i < r.phi0.t.size(); ++i) {
    CHECK(r.phi0.phi[i] > r.phi0.phi[i - 1]);
    CHECK(r.phi0.phi[i] < 1.0);
    CHECK(r.phi0.phi[i] / r.phi0.t[i] <= r.phi0.phi[i - 1] / r.phi0.t[i - 1] * (1 + 1e-15));
  }
  for (std::size_t i = 0; i < p.t.size(); ++i) {
    if (p.t[i] <= 0.5) CHECK(p.phi[i] / r.phi0.phi[i] == 1.0);
    CHECK(p.phi[i] <= r.k * r.phi0.phi[i] * (1 + 1e-15));
    CHECK(r.phi0.phi[i] <= r.k * p.phi[i] * (1 + 1e-15));
    // Composition law: both factors nonincreasing.
    if (i) {
      const double g1 = regularizing_map(p.t[i], 0.5, 1.0), g0 = regularizing_map(p.t[i - 1], 0.5, 1.0);
      CHECK(r.phi0.phi[i] / g1 <= r.phi0.phi[i - 1] / g0 * (1 + 1e-12));
    }
  }
  // phi / phi0 -> d / phi(c) = 1 at infinity; the maximum is interior and finite.
  CHECK(r.k > 1.0);
  CHECK(r.k < 2.0);
  const auto d = regularize(p);
  CHECK(d.eps == 0.5);
}

TEST_CASE("regularize identity branch and errors") {
  const auto lin = sample_profile(fundamental_lux(OrliczFunction::power(1)));
  const auto r = regularize(lin);
  CHECK(r.k == 1.0);
  for (std::size_t i = 0; i < lin.t.size(); i += 37) CHECK(r.phi0(lin.t[i]) == lin.t[i]);
  const auto p = concave_majorant(min1());
  CHECK_THROWS_AS(regularize(p, 1.0), DomainError);
  CHECK_THROWS_AS(regularize(p, 2.0), DomainError);
  CHECK_THROWS_AS(regularize(p, 0.0), DomainError);
  CHECK_THROWS_AS(regularize(max1()), DomainError);  // not concave
}

TEST_CASE("orlicz_from_fundamental examples") {
  const auto sq = orlicz_from_fundamental(root());
  for (double t : {0.01, 0.5, 1.0, 3.0, 100.0}) CHECK(sq.psi0(t) == doctest::Approx(t * t).epsilon(1e-10));
  CHECK_THROWS_AS(orlicz_from_fundamental(min1()), DomainError);
  const auto cube = sample_profile(fundamental_lux(OrliczFunction::power(3)));
  const auto rt = fundamental_lux(orlicz_from_fundamental(cube).psi0);
  for (std::size_t i = 1; i + 1 < cube.t.size(); i += 7) CHECK(rt(cube.t[i]) == doctest::Approx(cube.phi[i]).epsilon(1e-8));
}

TEST_CASE("psi0 of the regularized min(1,t) is not convex") {
  // g(t) = 1 - 1/(4t) past eps = 1/2, so 1/phi0^{-1}(1/t) = 4(t - 1)/t on (1, 2): concave.
  const auto r = regularize(concave_majorant(min1()), 0.5);
  CHECK(r.phi0(3.0) == doctest::Approx(1 - 1.0 / 12).epsilon(1e-14));
  CHECK_THROWS_AS(orlicz_from_fundamental(r.phi0), DomainError);
}

TEST_CASE("t/(1+t) reconstructs psi_{1+inf}") {
  const auto p = sample_profile(fundamental_lux(OrliczFunction::one_plus_inf()));
  const auto rec = orlicz_from_fundamental(p);
  for (double t : {0.25, 1.0}) CHECK(rec.psi0(t) == 0.0);
  for (double t : {1.5, 2.0, 10.0, 1e4}) CHECK(rec.psi0(t) == doctest::Approx(t - 1).epsilon(1e-9));
  CHECK(rec.knots.front().t == 0.0);
  CHECK(rec.knots[1].t == 1.0);
  CHECK(rec.knots[1].v == 0.0);
  const auto rt = fundamental_lux(rec.psi0);
  for (std::size_t i = 1; i + 1 < p.t.size(); i += 11) CHECK(rt(p.t[i]) == doctest::Approx(p.phi[i]).epsilon(1e-8));
}

TEST_CASE("max(1,t) hull reconstructs an Orlicz function capped at 1") {
  const auto h = concave_majorant(max1());
  const auto rec = orlicz_from_fundamental(h);
  CHECK(rec.psi0.b_psi() == doctest::Approx(1.0));
  CHECK(std::isinf(rec.psi0(1.5)));
  CHECK(rec.psi0(0.5) == doctest::Approx(0.5 / (1 - 0.5)).epsilon(1e-6));  // t/(1-t)
}

TEST_CASE("majorant of a concave profile keeps its evaluator through reconstruction") {
  const auto cube = sample_profile(fundamental_lux(OrliczFunction::power(3)));
  const auto hull = concave_majorant(cube);
  CHECK(hull.phi == cube.phi);
  CHECK(hull(1e-12) == cube(1e-12));
  const auto rec = orlicz_from_fundamental(regularize(hull).phi0);
  for (double t : {0.01, 1.0, 50.0, 1e4}) CHECK(rec.psi0(t) == doctest::Approx(t * t * t).epsilon(1e-9));
}
