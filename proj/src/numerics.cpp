#include "orlab/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace olab {

std::vector<double> log_grid(double a, double b, std::size_t n) {
  if (!(a > 0 && b > a) || n < 2) throw std::invalid_argument("log_grid: need 0 < a < b and n >= 2");
  std::vector<double> g(n);
  const double la = std::log(a), lb = std::log(b);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(la + (lb - la) * double(i) / double(n - 1));
  g.front() = a;
  g.back() = b;
  return g;
}

double bisect_threshold(const std::function<bool(double)>& pred, double lo, double hi, double rel_tol,
                        int max_iter) {
  for (int it = 0; it < max_iter; ++it) {
    if (hi - lo <= rel_tol * std::abs(hi)) break;
    const double mid = (lo > 0 && hi > 2 * lo) ? std::sqrt(lo) * std::sqrt(hi) : lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

GoldenResult golden_min(const std::function<double(double)>& f, double a, double b, double tol, int max_iter) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > tol * (std::abs(a) + std::abs(b) + 1e-300); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  GoldenResult best{c, fc};
  if (fd < best.fx) best = {d, fd};
  const double fa = f(a), fb = f(b);
  if (fa < best.fx) best = {a, fa};
  if (fb < best.fx) best = {b, fb};
  return best;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  // Split into fixed panels first so that narrow features are not skipped by the initial sample.
  constexpr int kPanels = 16;
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const double pa = a + (b - a) * k / kPanels;
    const double pb = a + (b - a) * (k + 1) / kPanels;
    const double fa = f(pa), fb = f(pb), fm = f(0.5 * (pa + pb));
    const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, pa, pb, fa, fm, fb, whole, tol / kPanels, max_depth);
  }
  return total;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("least_squares_slope: bad sizes");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(y.size());
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::vector<double> isotonic_nonincreasing(std::span<const double> y, std::span<const double> w) {
  struct Pool {
    double sum_wy, sum_w;
    std::size_t count;
  };
  std::vector<Pool> pools;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double wi = w.empty() ? 1.0 : w[i];
    pools.push_back({wi * y[i], wi, 1});
    while (pools.size() > 1) {
      const auto& last = pools.back();
      const auto& prev = pools[pools.size() - 2];
      if (prev.sum_wy / prev.sum_w >= last.sum_wy / last.sum_w) break;
      Pool merged{prev.sum_wy + last.sum_wy, prev.sum_w + last.sum_w, prev.count + last.count};
      pools.pop_back();
      pools.back() = merged;
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (const auto& p : pools)
    for (std::size_t k = 0; k < p.count; ++k) out.push_back(p.sum_wy / p.sum_w);
  return out;
}

}  // namespace olab
