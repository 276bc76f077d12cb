#pragma once

#include <memory>
#include <string>
#include <vector>

#include "orlab/crossed.hpp"
#include "orlab/orlicz_function.hpp"

namespace olab {

// K(t) sampled on an increasing grid with its right-difference density:
//   k_head on (0, t[0]), k[i] on [t[i], t[i+1]), 0 beyond t.back().
struct KProfile {
  std::vector<double> t;
  std::vector<double> K;
  std::vector<double> k;
  double K0 = 0.0;  // K(0+)
  double k_head = 0.0;
};

// int_0^t mu_s(f) ds, checked against inf over clipping thresholds c of tau((|f| - c)_+) + t c.
// Throws CheckFailure when the two disagree beyond 1e-8 relative.
double k_functional(const AlgebraElement& f, double t);
double k_functional_clip(const AlgebraElement& f, double t);

// Classical profile; the grid is merged with the breakpoints of mu(f) inside its range so the
// density is exact on every piece.
KProfile k_density(const AlgebraElement& f, const std::vector<double>& grid);

// Largest increase of the chord slopes of K over the grid (positive means a concavity defect).
double concavity_defect(const std::vector<double>& t, const std::vector<double>& K);

struct ModifiedKCurve {
  std::vector<double> t;
  std::vector<double> K;
  double K0;
  std::size_t family_size;
};
// Min over one decomposition family, refined at every grid point before evaluation; each member is
// l1 + sqrt(t)(l2r + l2l) + t linf, so the curve is concave by construction.
ModifiedKCurve modified_K_curve(const IotaSum& x, const std::vector<double>& grid);
double modified_K(const IotaSum& x, double t);

inline constexpr double kIsotonicTol = 1e-9;
// Right-difference density of the modified K. Increases up to kIsotonicTol * max k are projected
// away; larger ones throw CheckFailure.
KProfile k_tilde(const ModifiedKCurve& curve);
// max_j |K0 + int_0^{t_j} k - K(t_j)| / (1 + |K(t_j)|).
double reconstruction_error(const KProfile& p);

class RieszFischerSpec {
 public:
  // L^q on (0, inf), q in [1, inf].
  static RieszFischerSpec lq(double q);
  // Luxemburg norm of an Orlicz function on (0, inf).
  static RieszFischerSpec orlicz(const OrliczFunction& psi);

  std::string label() const;
  // rho of the step function with the given values on consecutive intervals of the given widths.
  double evaluate(const std::vector<double>& values, const std::vector<double>& widths) const;

  // Sampled checks of the three monotone Riesz-Fischer properties, as largest relative violations.
  struct Validation {
    double domination;     // rho(g) finite whenever rho(f) finite and int_0^t g <= int_0^t f
    double indicator;      // int_E f <= C_E rho(f)
    double subadditivity;  // rho(sum f_n) <= sum rho(f_n)
    bool ok() const { return domination <= 0 && indicator <= 1e-12 && subadditivity <= 1e-12; }
  };
  Validation validate() const;

 private:
  double q_ = 1.0;
  std::shared_ptr<const OrliczFunction> psi_;
};

// rho applied to the density of a profile. Infinite when the profile is not in the space.
double riesz_fischer_norm(const RieszFischerSpec& spec, const KProfile& p);

}  // namespace olab
