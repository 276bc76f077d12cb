#include <algorithm>
#include <cmath>

#include "orlab/crossed.hpp"
#include "orlab/numerics.hpp"
#include "orlab/tracial.hpp"

namespace olab {

namespace {

AlgebraElement rho_power(const DualWeightDensity& d, double e) {
  return d.apply([e](double r) { return std::pow(r, e); }, 0.0);
}

DensityPtr tracial_for(const AlgebraElement& a) { return tracial_density(a.algebra()); }

}  // namespace

HaagerupElement::HaagerupElement(AlgebraElement b, double p_) : base(std::move(b)), p(p_) {
  if (!(p >= 1) || !std::isfinite(p)) throw DomainError("HaagerupElement: p must lie in [1, inf)");
}

CrossedElement HaagerupElement::to_crossed(DensityPtr density) const {
  const AlgebraElement coef = base * rho_power(*density, 1.0 / p);
  return CrossedElement::separable(std::move(density), {Term{coef, power_profile(1.0 / p), Argument::exp_t}});
}

double HaagerupElement::lp_norm(const DualWeightDensity& density) const {
  double s = 0;
  for (const auto& a : singular_atoms(base * rho_power(density, 1.0 / p))) s += a.weight * std::pow(a.value, p);
  return std::pow(s, 1.0 / p);
}

CrossedElement tensor_fundamental(DensityPtr density, const AlgebraElement& a, const OrliczFunction& psi) {
  return CrossedElement::separable(std::move(density), {Term{a, fundamental_lux(psi), Argument::exp_t}});
}

CrossedElement embed_luxemburg(DensityPtr density, const AlgebraElement& b, const OrliczFunction& psi) {
  return CrossedElement::separable(std::move(density),
                                   {Term{b, fundamental_lux(psi), Argument::density, Placement::sandwich}});
}

MainIdentity verify_mainthm(const AlgebraElement& a, const OrliczFunction& psi, double eps) {
  if (!(eps > 0)) throw DomainError("verify_mainthm: eps must be positive");
  const auto x = tensor_fundamental(tracial_for(a), a, psi);
  MainIdentity out{distribution_crossed(x, eps), 0.0};
  for (const auto& at : singular_atoms(a)) {
    if (at.value == 0) continue;
    out.rhs += ext_mul(at.weight, psi(at.value / eps));
  }
  return out;
}

double lux_via_mu1(const AlgebraElement& a, const OrliczFunction& psi) {
  return mu_crossed(tensor_fundamental(tracial_for(a), a, psi), 1.0);
}

double amemiya_via_lambda(const AlgebraElement& a, const OrliczFunction& psi) {
  double top = 0;
  for (const auto& at : singular_atoms(a)) top = std::max(top, at.value);
  if (top == 0) return 0.0;
  const auto x = tensor_fundamental(tracial_for(a), a, psi);
  auto G = [&](double k) { return k * (1 + distribution_crossed(x, k)); };
  // lambda_k = inf below k_min = top / b_psi.
  const double k_min = top / psi.b_psi();
  const double y0 = std::log(mu_crossed(x, 1.0));
  const double ylo = k_min > 0 ? std::max(y0 - 60, std::log(k_min)) : y0 - 60;
  const auto g = golden_min([&](double y) { return G(std::exp(y)); }, ylo, y0 + 60, 1e-13);
  double best = g.fx;
  if (k_min > 0) best = std::min(best, G(k_min));
  return best;
}

}  // namespace olab
