#include <algorithm>
#include <cmath>

#include "orlab/crossed.hpp"

namespace olab {

namespace {

std::vector<AlgebraElement> cells_of(const CrossedElement& x, const GridSpec& spec) {
  return x.to_grid(spec).grid_data().cells;
}

// f(rho e^{t_i}) for every cell.
std::vector<AlgebraElement> h_cells(const DualWeightDensity& d, const GridSpec& spec,
                                    const std::function<double(double)>& f) {
  std::vector<AlgebraElement> out;
  out.reserve(spec.cells);
  for (std::size_t i = 0; i < spec.cells; ++i) out.push_back(d.apply(f, spec.mid(i)));
  return out;
}

bool all_zero(const std::vector<AlgebraElement>& cells) {
  for (const auto& c : cells)
    if (c.op_norm() != 0) return false;
  return true;
}

// Deviation between theta_s(y) and c(s) z over the overlap, for y, z given cellwise.
MembershipReport shift_test(const std::vector<AlgebraElement>& y,
                            const std::function<const std::vector<AlgebraElement>&(int)>& z_for_shift,
                            const std::function<double(double)>& factor, const GridSpec& spec) {
  if (all_zero(y)) return {Verdict::member, 0.0};
  const auto n = static_cast<long>(spec.cells);
  double worst = 0;
  for (int k : kMembershipShifts) {
    if (n - std::abs(k) < n / 2) return {Verdict::inconclusive, worst};
    const auto& z = z_for_shift(k);
    std::vector<AlgebraElement> lhs, rhs;
    for (long i = std::max(0L, static_cast<long>(k)); i < std::min(n, n + k); ++i) {
      lhs.push_back(y[static_cast<std::size_t>(i - k)]);
      rhs.push_back(z[static_cast<std::size_t>(i)]);
    }
    worst = std::max(worst, max_relative_deviation(lhs, rhs, factor(k * spec.step())));
  }
  return {worst <= kHomogeneityTol ? Verdict::member : Verdict::not_member, worst};
}

MembershipReport homogeneity_cells(const std::vector<AlgebraElement>& y, double gamma, const GridSpec& spec) {
  return shift_test(
      y, [&](int) -> const std::vector<AlgebraElement>& { return y; },
      [gamma](double s) { return std::exp(-gamma * s); }, spec);
}

FundamentalFunction sandwich_function(const Space& sp) {
  const OrliczFunction conj = conjugate(*sp.psi);
  switch (sp.kind) {
    case SpaceKind::Lpsi:
    case SpaceKind::S_upper:
    case SpaceKind::left_upper:
    case SpaceKind::right_upper:
      return fundamental_orl(conj);
    default:
      return fundamental_lux(conj);
  }
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::member:
      return "member";
    case Verdict::not_member:
      return "not_member";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

MembershipReport homogeneity(const CrossedElement& x, double gamma, const GridSpec& spec) {
  return homogeneity_cells(cells_of(x, spec), gamma, spec);
}

MembershipReport membership(const CrossedElement& x, const Space& space, const GridSpec& spec) {
  if (space.kind == SpaceKind::L1) return homogeneity(x, 1.0, spec);
  if (space.kind == SpaceKind::Lp) {
    if (!(space.p >= 1)) throw DomainError("membership: p must be >= 1");
    return homogeneity(x, 1.0 / space.p, spec);
  }
  if (!space.psi) throw DomainError("membership: space needs an Orlicz function");
  const auto& dens = *x.density();
  const auto f = sandwich_function(space);
  auto cells = cells_of(x, spec);

  if (space.kind == SpaceKind::S_upper || space.kind == SpaceKind::S_lower) {
    if (all_zero(cells)) return {Verdict::member, 0.0};
    // Cutoffs kept away from cell midpoints of typical densities.
    constexpr double kDeltas[] = {0.3183098861837907, 2.718281828459045, 141.42135623730951};
    MembershipReport worst{Verdict::member, 0.0};
    for (double delta : kDeltas) {
      auto cut = [&](double level) {
        auto hf = h_cells(dens, spec, [&](double u) { return u <= level ? std::sqrt(f(u)) : 0.0; });
        for (std::size_t i = 0; i < hf.size(); ++i) hf[i] = cells[i] * hf[i];
        return hf;
      };
      const auto y = cut(delta);
      std::vector<AlgebraElement> z;
      int z_shift = 0;
      auto z_for = [&](int k) -> const std::vector<AlgebraElement>& {
        if (z.empty() || z_shift != k) {
          z = cut(std::exp(k * spec.step()) * delta);
          z_shift = k;
        }
        return z;
      };
      const auto r = shift_test(y, z_for, [](double s) { return std::exp(-0.5 * s); }, spec);
      if (r.verdict == Verdict::inconclusive) return r;
      worst.max_deviation = std::max(worst.max_deviation, r.max_deviation);
      if (r.verdict == Verdict::not_member) worst.verdict = Verdict::not_member;
    }
    return worst;
  }

  switch (space.kind) {
    case SpaceKind::Lpsi:
    case SpaceKind::Lorlicz: {
      const auto root = h_cells(dens, spec, [&](double u) { return std::sqrt(f(u)); });
      for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = root[i] * cells[i] * root[i];
      break;
    }
    case SpaceKind::left_upper:
    case SpaceKind::left_lower: {
      const auto hf = h_cells(dens, spec, [&](double u) { return f(u); });
      for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = hf[i] * cells[i];
      break;
    }
    case SpaceKind::right_upper:
    case SpaceKind::right_lower: {
      const auto hf = h_cells(dens, spec, [&](double u) { return f(u); });
      for (std::size_t i = 0; i < cells.size(); ++i) cells[i] = cells[i] * hf[i];
      break;
    }
    default:
      break;
  }
  return homogeneity_cells(cells, 1.0, spec);
}

DtReport verify_dt_identity(const CrossedElement& x, const OrliczFunction& psi, double t, const GridSpec& spec) {
  if (!(t > 0 && t <= 1)) throw DomainError("verify_dt_identity: t must lie in (0, 1]");
  const double s = std::log(t);
  const double k_real = s / spec.step();
  const long k = std::lround(k_real);
  if (std::abs(k_real - static_cast<double>(k)) > 1e-9 * std::max(1.0, std::abs(k_real)))
    throw DomainError("verify_dt_identity: ln t is not a multiple of the grid step");
  const auto f = fundamental_orl(conjugate(psi));
  const auto& dens = *x.density();
  const auto cells = cells_of(x, spec);
  const auto n = static_cast<long>(spec.cells);
  const double es = std::exp(-s);
  std::vector<AlgebraElement> lhs, rhs;
  double d_norm = 0;
  for (long i = std::max(0L, k); i < std::min(n, n + k); ++i) {
    const double ti = spec.mid(static_cast<std::size_t>(i));
    const auto d = dens.apply([&](double u) { return f(u) / f(es * u); }, ti);
    const auto root = dens.apply([&](double u) { return std::sqrt(f(u) / f(es * u)); }, ti);
    d_norm = std::max(d_norm, d.op_norm());
    lhs.push_back(cells[static_cast<std::size_t>(i - k)]);
    rhs.push_back(root * cells[static_cast<std::size_t>(i)] * root);
  }
  return {max_relative_deviation(lhs, rhs, es), d_norm};
}

}  // namespace olab
