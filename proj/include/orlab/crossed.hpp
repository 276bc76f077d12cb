#pragma once

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "orlab/algebra.hpp"
#include "orlab/orlicz_function.hpp"

namespace olab {

// Model crossed product A = M (x) L^inf(R): elements are functions t -> x(t) in M, trace
// tau_A(x) = int tau(x(t)) e^{-t} dt, dual action theta_s(x)(t) = x(t - s), density h(t) = rho e^t.

// Nondecreasing quasi-concave profile g; reuses the fundamental-function machinery
// (limits, tail exponents, upper levels).
using Profile = FundamentalFunction;

Profile power_profile(double a);        // u^a, 0 <= a <= 1
Profile constant_profile(double c = 1.0);
Profile min_one_profile();              // min(1, u)
Profile sqrt_profile(const Profile& g);  // g^{1/2}
Profile scaled_profile(const Profile& g, double r);  // u -> g(r u)

// Positive definite rho, cached eigendecomposition per block.
class DualWeightDensity {
 public:
  explicit DualWeightDensity(AlgebraElement rho);
  // rho = 1 / tau(1).
  static DualWeightDensity tracial(const AlgebraPtr& alg);

  const AlgebraElement& rho() const { return rho_; }
  const AlgebraPtr& algebra() const { return rho_.algebra(); }
  bool is_tracial(double tol = 1e-12) const;
  // f(rho e^t).
  AlgebraElement apply(const std::function<double(double)>& f, double t) const;
  const std::vector<HermitianEigen>& eigen() const { return eig_; }

 private:
  AlgebraElement rho_;
  std::vector<HermitianEigen> eig_;
};

using DensityPtr = std::shared_ptr<const DualWeightDensity>;
DensityPtr make_density(AlgebraElement rho);
DensityPtr tracial_density(const AlgebraPtr& alg);

struct GridSpec {
  double t_min = -30.0;
  double t_max = 30.0;
  std::size_t cells = 4096;

  double step() const { return (t_max - t_min) / static_cast<double>(cells); }
  double mid(std::size_t i) const { return t_min + (static_cast<double>(i) + 0.5) * step(); }
  double left(std::size_t i) const { return t_min + static_cast<double>(i) * step(); }
  // e^{-t_left} - e^{-t_right}.
  double cell_weight(std::size_t i) const;
  bool operator==(const GridSpec&) const = default;
};

// Relative error bound of the grid distribution for elements whose level sets are half-lines
// per spectral atom: |lambda_grid - lambda| <= (e^{step/2} - 1) lambda + 1e-12 (1 + lambda).
double grid_quadrature_bound(const GridSpec& g, double lambda);

enum class Argument { exp_t, density };   // g(e^t) or g(rho e^t)
enum class Placement { right, left, sandwich };  // b g, g b, g^{1/2} b g^{1/2}

struct Term {
  AlgebraElement base;
  Profile profile;
  Argument argument = Argument::exp_t;
  Placement placement = Placement::right;
};

struct GridSpectrum;

// x(t) sampled at cell midpoints; outside [t_min, t_max] x(t) ~ x_edge e^{exponent (t - t_edge)}.
struct GridData {
  GridSpec spec;
  std::vector<AlgebraElement> cells;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
};

class CrossedElement {
 public:
  static CrossedElement separable(DensityPtr density, std::vector<Term> terms);
  static CrossedElement grid(DensityPtr density, GridData data);
  // Samples f at the cell midpoints of `spec`.
  static CrossedElement sample(DensityPtr density, const GridSpec& spec,
                               const std::function<AlgebraElement(double)>& f, double left_exponent,
                               double right_exponent);
  static CrossedElement zero(DensityPtr density);

  const DensityPtr& density() const { return density_; }
  const AlgebraPtr& algebra() const { return density_->algebra(); }
  bool is_separable() const { return std::holds_alternative<std::vector<Term>>(rep_); }
  const std::vector<Term>& terms() const;
  const GridData& grid_data() const;

  // Whether distributions are evaluated by closed form rather than on the grid.
  bool closed_form() const;
  // Why the grid path is taken ("" when closed_form()).
  std::string evaluation_note() const;

  // x(t) as a matrix.
  AlgebraElement at(double t) const;
  CrossedElement to_grid(const GridSpec& spec = {}) const;
  // Spectrum of the grid representation (computed once, shared by copies).
  const GridSpectrum& grid_spectrum() const;

  CrossedElement adjoint() const;
  CrossedElement& operator*=(cplx s);
  friend CrossedElement operator*(CrossedElement x, cplx s) { return x *= s; }
  friend CrossedElement operator*(cplx s, CrossedElement x) { return x *= s; }
  friend CrossedElement operator+(const CrossedElement& x, const CrossedElement& y);
  // Pointwise product, always on the grid.
  friend CrossedElement operator*(const CrossedElement& x, const CrossedElement& y);

 private:
  CrossedElement(DensityPtr density, std::variant<std::vector<Term>, GridData> rep);

  DensityPtr density_;
  std::variant<std::vector<Term>, GridData> rep_;
  struct Cache;
  std::shared_ptr<Cache> cache_;
};

// f(h) = f(rho e^t).
CrossedElement h_function(DensityPtr density, const Profile& f);
// pi(b): the constant function b.
CrossedElement constant_element(DensityPtr density, const AlgebraElement& b);

// b h^{1/p}, i.e. t -> b rho^{1/p} e^{t/p}.
struct HaagerupElement {
  AlgebraElement base;
  double p;

  HaagerupElement(AlgebraElement b, double p);
  CrossedElement to_crossed(DensityPtr density) const;
  // (sum w sigma_j(b rho^{1/p})^p)^{1/p}.
  double lp_norm(const DualWeightDensity& density) const;
};

// a (x) phi_psi(e^t).
CrossedElement tensor_fundamental(DensityPtr density, const AlgebraElement& a, const OrliczFunction& psi);
// phi_psi(h)^{1/2} b phi_psi(h)^{1/2}.
CrossedElement embed_luxemburg(DensityPtr density, const AlgebraElement& b, const OrliczFunction& psi);

// lambda_s(x) = tau_A(chi_{(s, inf)}(|x|)).
double distribution_crossed(const CrossedElement& x, double s);
// inf{s >= 0 : lambda_s(x) <= t}. Throws DomainError when lambda_s > t for every s.
double mu_crossed(const CrossedElement& x, double t);
// Translation by s; grid elements require s to be a multiple of the step.
CrossedElement theta(const CrossedElement& x, double s);
// Throws DomainError when the integral diverges.
cplx tau_A(const CrossedElement& x);

// Sorted (sigma, measure) pairs of a grid element with cumulative measures, plus the edge
// atoms used by the analytic tails.
struct GridSpectrum {
  std::vector<double> sigma;       // descending
  std::vector<double> cumulative;  // cumulative[i] = sum of measures of sigma[0..i]
  struct EdgeAtom {
    double sigma;
    double weight;
  };
  std::vector<EdgeAtom> left_edge, right_edge;
  double left_mid = 0.0, right_mid = 0.0;
  double t_min = 0.0, t_max = 0.0;
  double left_exponent = 0.0, right_exponent = 0.0;

  double distribution(double s) const;
};

// Per-cell (sigma, tau-weight * cell weight) pairs sorted by descending sigma, stable on ties.
struct WeightedValues {
  std::vector<double> sigma;
  std::vector<double> measure;
};
WeightedValues grid_weighted_values(const GridData& g);
WeightedValues grid_weighted_values_serial(const GridData& g);
// max_i ||a_i - c b_i||_max / max(||a_i||_max, ||c b_i||_max) over paired cells.
double max_relative_deviation(const std::vector<AlgebraElement>& a, const std::vector<AlgebraElement>& b,
                              double c);
double max_relative_deviation_serial(const std::vector<AlgebraElement>& a,
                                     const std::vector<AlgebraElement>& b, double c);

// ---- bridges between the tracial model and the crossed product

struct MainIdentity {
  double lhs;  // lambda_eps(a (x) phi_psi(e^t))
  double rhs;  // tau(psi(|a| / eps))
};
MainIdentity verify_mainthm(const AlgebraElement& a, const OrliczFunction& psi, double eps);
// mu_1(a (x) phi_psi(e^t)).
double lux_via_mu1(const AlgebraElement& a, const OrliczFunction& psi);
// inf_{k>0} k (1 + lambda_k(a (x) phi_psi(e^t))).
double amemiya_via_lambda(const AlgebraElement& a, const OrliczFunction& psi);

// ---- membership

enum class Verdict { member, not_member, inconclusive };
const char* verdict_name(Verdict v);

enum class SpaceKind { L1, Lp, Lpsi, Lorlicz, S_upper, S_lower, left_upper, left_lower, right_upper, right_lower };

struct Space {
  SpaceKind kind;
  double p = 1.0;                            // Lp
  std::shared_ptr<const OrliczFunction> psi;  // all psi-dependent kinds

  static Space L1() { return {SpaceKind::L1, 1.0, nullptr}; }
  static Space Lp(double p) { return {SpaceKind::Lp, p, nullptr}; }
  static Space with_psi(SpaceKind k, const OrliczFunction& psi) {
    return {k, 1.0, std::make_shared<const OrliczFunction>(psi)};
  }
};

struct MembershipReport {
  Verdict verdict;
  double max_deviation;  // worst relative deviation over the tested shifts
};
inline constexpr double kHomogeneityTol = 1e-6;
// Shifts tested, in cells.
inline constexpr int kMembershipShifts[] = {-128, -64, 64, 128};

MembershipReport membership(const CrossedElement& x, const Space& space, const GridSpec& spec = {});
// theta_s(x) vs e^{-gamma s} x on the grid.
MembershipReport homogeneity(const CrossedElement& x, double gamma, const GridSpec& spec = {});

struct DtReport {
  double max_rel_error;
  double d_norm;  // sup of ||d_t|| over cells
};
// theta_s(x) = e^{-s} d^{1/2} x d^{1/2} with d = f(h) f(e^{-s} h)^{-1}, f = tilde phi_{psi*},
// s = ln t <= 0 a multiple of the grid step.
DtReport verify_dt_identity(const CrossedElement& x, const OrliczFunction& psi, double t, const GridSpec& spec = {});

// ---- norms on the crossed product

double quasinorm_mu1(const CrossedElement& x);
// max over a log grid of t in (0, 1] of t mu_t(x) / mu_1(x) - 1 (positive means violation).
double quasinorm_excess(const CrossedElement& x, int points = 40);

// max(||h^{1/2} b h^{1/2}||_1, ||h^{1/2} b||_2, ||b h^{1/2}||_2, ||b||).
double norm_1capinf(const DualWeightDensity& density, const AlgebraElement& b);

// Elements of the form min(1,h)^{1/2} a min(1,h)^{1/2}, built from the four embeddings:
//   iota_1(c)     for c = h^{1/2} c0 h^{1/2} in L^1
//   iota_2r(d)    for d = h^{1/2} d0 in L^2
//   iota_2l(e)    for e = e0 h^{1/2} in L^2
//   iota_inf(f0)  for f0 in M
// Each stores its coefficient; the element keeps the explicit split it was built from.
struct IotaSum {
  DensityPtr density;
  AlgebraElement c0, d0, e0, f0;

  AlgebraElement coefficient() const { return c0 + d0 + e0 + f0; }
  CrossedElement to_crossed() const;
  IotaSum& operator+=(const IotaSum& o);
  friend IotaSum operator+(IotaSum a, const IotaSum& b) { return a += b; }
};
IotaSum iota_1(DensityPtr density, const AlgebraElement& c0);
IotaSum iota_2r(DensityPtr density, const AlgebraElement& d0);
IotaSum iota_2l(DensityPtr density, const AlgebraElement& e0);
IotaSum iota_inf(DensityPtr density, const AlgebraElement& f0);

// Costs of a split a = c0 + d0 + e0 + f0.
struct SplitCosts {
  double l1, l2r, l2l, linf;
  double weighted(double t) const;  // l1 + sqrt(t) (l2r + l2l) + t linf
};
SplitCosts split_costs(const DualWeightDensity& density, const AlgebraElement& c0, const AlgebraElement& d0,
                       const AlgebraElement& e0, const AlgebraElement& f0);

// Two-threshold member: f0 = v min(|a|, c), band v (min(|a|, C) - min(|a|, c)) split evenly
// between d0 and e0, c0 = v (|a| - C)_+.
struct ThresholdPair {
  double low, high;
};
SplitCosts threshold_costs(const DualWeightDensity& density, const AlgebraElement& a, ThresholdPair th);

class DecompositionFamily {
 public:
  // Seeds: thresholds at {0, sigma_j, 1, geometric midpoints} in every ordered pair.
  DecompositionFamily(DensityPtr density, AlgebraElement a);
  // Coordinate descent from the best threshold member at t; the result joins the family.
  void refine(double t);
  // Adds an arbitrary feasible split.
  void add(const SplitCosts& member) { extra_.push_back(member); }
  double value(double t) const;  // min over members
  std::size_t size() const { return members_.size() + extra_.size(); }
  const std::vector<ThresholdPair>& thresholds() const { return thresholds_; }

 private:
  DensityPtr density_;
  AlgebraElement a_;
  std::vector<ThresholdPair> thresholds_;
  std::vector<SplitCosts> members_;  // parallel to thresholds_
  std::vector<SplitCosts> extra_;
};

struct NormBounds {
  double upper;
  double lower;
  std::size_t family_size;
};
// Upper bound by the refined family at t = 1; lower bound max over eps in (0, 4] of eps mu_eps / 4.
NormBounds norm_1plusinf(const IotaSum& x);
// max_{eps} eps mu_eps(x) / 4 over 200 log-spaced eps in [1e-6, 4].
double norm_1plusinf_lower(const CrossedElement& x);

struct PairingReport {
  cplx value;        // tr(b a)
  double bound;      // 2 mu_1(b) mu_1(a)
  double l1_deviation;
  bool ok;
};
// a in L^psi(M; l), b in L_{psi*}(M; r). Throws DomainError naming the failed membership.
PairingReport pairing_duality(const CrossedElement& a, const CrossedElement& b, const OrliczFunction& psi);

// Matrix coefficient C of an L^1 element x(t) = C e^t, averaged over the central cells, and tau(C).
cplx l1_trace(const CrossedElement& x, const GridSpec& spec = {});

struct ProbeReport {
  double sup_ratio;  // sup |tr(b0 a b1*)| / (mu_1(b0) mu_1(b1))
  double mu1;        // mu_1(a)
  bool bound_3mu1_ok;
  bool bound_mu1_ok;
};
// a = phi_psi(h)^{1/2} m phi_psi(h)^{1/2}; b_i = c_i tilde phi_{psi*}(h)^{1/2} with random c_i.
ProbeReport probe_triple_norm(const AlgebraElement& m, const DensityPtr& density, const OrliczFunction& psi,
                              int samples, std::uint64_t seed);

struct NormabilityReport {
  double integral;  // int_0^1 mu_t = int_0^inf min(lambda_s, 1) ds
  double mu1;
  double boyd_constant;
  bool lower_ok, upper_ok;
  double worst_dilation_excess;  // max over t of t mu_t / (k_{psi*}(t) mu_1) - 1
};
// Throws DomainError when psi is not Boyd-normable.
NormabilityReport normability_norm(const CrossedElement& x, const OrliczFunction& psi);

// sup_t tilde phi_psi(t) / phi_psi(t) and sup_t phi_psi(t) / tilde phi_psi(t) over a log grid.
struct MultiplierBounds {
  double ratio_sup;
  double inverse_sup;
};
MultiplierBounds multiplier_bounds(const OrliczFunction& psi);

}  // namespace olab
