#include <algorithm>
#include <numeric>

#include "orlab/crossed.hpp"
#include "orlab/tracial.hpp"

namespace olab {

namespace {

struct Pair {
  double sigma;
  double measure;
};

// Descending by sigma; ties keep cell order so serial and parallel runs agree bit for bit.
WeightedValues sort_pairs(std::vector<Pair> pairs) {
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.sigma > b.sigma; });
  WeightedValues out;
  out.sigma.reserve(pairs.size());
  out.measure.reserve(pairs.size());
  for (const auto& p : pairs) {
    out.sigma.push_back(p.sigma);
    out.measure.push_back(p.measure);
  }
  return out;
}

std::vector<Pair> cell_pairs(const GridData& g, std::size_t i) {
  std::vector<Pair> out;
  const double cw = g.spec.cell_weight(i);
  for (const auto& a : singular_atoms(g.cells[i]))
    if (a.value > 0) out.push_back({a.value, a.weight * cw});
  return out;
}

double cell_deviation(const AlgebraElement& a, const AlgebraElement& b, double c) {
  double diff = 0, na = 0, nb = 0;
  for (std::size_t k = 0; k < a.blocks().size(); ++k) {
    const auto& x = a.block(k);
    const auto& y = b.block(k);
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        diff = std::max(diff, std::abs(x(i, j) - c * y(i, j)));
        na = std::max(na, std::abs(x(i, j)));
        nb = std::max(nb, std::abs(c * y(i, j)));
      }
  }
  const double scale = std::max(na, nb);
  return scale == 0 ? 0.0 : diff / scale;
}

}  // namespace

WeightedValues grid_weighted_values_serial(const GridData& g) {
  std::vector<Pair> all;
  for (std::size_t i = 0; i < g.cells.size(); ++i) {
    const auto p = cell_pairs(g, i);
    all.insert(all.end(), p.begin(), p.end());
  }
  return sort_pairs(std::move(all));
}

WeightedValues grid_weighted_values(const GridData& g) {
  const auto n = static_cast<long>(g.cells.size());
  std::vector<std::vector<Pair>> per_cell(g.cells.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) per_cell[static_cast<std::size_t>(i)] = cell_pairs(g, static_cast<std::size_t>(i));
  std::vector<Pair> all;
  for (auto& p : per_cell) all.insert(all.end(), p.begin(), p.end());
  return sort_pairs(std::move(all));
}

double max_relative_deviation_serial(const std::vector<AlgebraElement>& a, const std::vector<AlgebraElement>& b,
                                     double c) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, cell_deviation(a[i], b[i], c));
  return worst;
}

double max_relative_deviation(const std::vector<AlgebraElement>& a, const std::vector<AlgebraElement>& b,
                              double c) {
  const auto n = static_cast<long>(a.size());
  double worst = 0;
#pragma omp parallel for reduction(max : worst) schedule(static)
  for (long i = 0; i < n; ++i)
    worst = std::max(worst, cell_deviation(a[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)], c));
  return worst;
}

}  // namespace olab
