#pragma once

#include <vector>

#include "orlab/algebra.hpp"
#include "orlab/orlicz_function.hpp"
#include "orlab/step_function.hpp"

namespace olab {

// Singular values of every block, each carrying its block weight.
std::vector<Atom> singular_atoms(const AlgebraElement& a);

// mu_t(a) as an exact step function; total measure tau(1).
StepFunction svf(const AlgebraElement& a);

// lambda_s(a) = tau(chi_{(s, inf)}(|a|)), from the singular values directly.
double distribution(const AlgebraElement& a, double s);

struct TraceFormula {
  double lhs;  // tau(|a|) from the eigenvalues of |a|
  double rhs;  // int_0^inf mu_t(a) dt
};
TraceFormula trace_formula_check(const AlgebraElement& a);

// Relative bisection tolerance used by the norm solvers (reported in CLI metadata).
inline constexpr double kNormRelTol = 1e-15;

// inf{lambda > 0 : sum_j w_j psi(sigma_j / lambda) <= 1}.
double luxemburg_norm(const AlgebraElement& a, const OrliczFunction& psi);
double luxemburg_norm(const StepFunction& f, const OrliczFunction& psi);
double luxemburg_norm(const std::vector<Atom>& atoms, const OrliczFunction& psi);

// inf_{k > 0} (1 + sum_j w_j psi(k sigma_j)) / k.
double amemiya_norm(const AlgebraElement& a, const OrliczFunction& psi);
double amemiya_norm(const std::vector<Atom>& atoms, const OrliczFunction& psi);

// sup{sum_i w_i |f_i| g_i : g >= 0, sum_i w_i psi*(g_i) <= 1}, by Lagrange stationarity
// g_i in d psi(|f_i| / kappa). Commutative algebras only.
double orlicz_norm_oracle(const AlgebraElement& f, const OrliczFunction& psi);
double orlicz_norm_oracle(const std::vector<Atom>& atoms, const OrliczFunction& psi);

struct CommuteCheck {
  bool ok;
  double max_error;  // relative, over step breakpoints and the trace identity
};
// mu(psi(|a|)) = psi(mu(a)) as step functions, and tau(psi(|a|)) = int psi(mu_t(a)) dt.
CommuteCheck psi_svf_commute_check(const AlgebraElement& a, const OrliczFunction& psi, double tol = 1e-10);

struct OnePlusInfSplit {
  AlgebraElement bounded;   // v min(|a|, 1)
  AlgebraElement summable;  // v (|a| - 1)_+
};
OnePlusInfSplit split_one_plus_inf(const AlgebraElement& a);

// Fack-Kosaki inequalities, each returning the largest positive excess of lhs over rhs,
// scaled by 1 + |rhs|. Step-function inequalities are checked at every pair of left endpoints,
// which is exact for piecewise-constant nonincreasing functions.
double fk_subadditivity(const AlgebraElement& a, const AlgebraElement& b);
double fk_submultiplicativity(const AlgebraElement& a, const AlgebraElement& b);
double fk_left_bound(const AlgebraElement& a, const AlgebraElement& b);  // mu_t(ab) <= ||a|| mu_t(b)
double fk_monotone(const AlgebraElement& a, const AlgebraElement& b);     // 0 <= a <= b
// |f(mu_t(|a|)) - mu_t(f(|a|))| for increasing continuous f with f(0) >= 0.
double fk_functional(const AlgebraElement& a, const std::function<double(double)>& f);

}  // namespace olab
