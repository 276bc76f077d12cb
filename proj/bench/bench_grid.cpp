#include <benchmark/benchmark.h>
#include <omp.h>

#include "orlab/crossed.hpp"
#include "orlab/random_instances.hpp"

using namespace olab;

namespace {

// 4096-cell grid element on a 3-block algebra with a non-tracial state.
const CrossedElement& fixture() {
  static const CrossedElement x = [] {
    InstanceRng rng(99, 0);
    const auto alg = make_algebra({{3, 1.0}, {2, 0.5}, {1, 2.0}});
    const auto d = make_density(random_density(rng, alg));
    return embed_luxemburg(d, random_element(rng, alg), OrliczFunction::power(2)).to_grid();
  }();
  return x;
}

void BM_weighted_values_serial(benchmark::State& state) {
  const auto& g = fixture().grid_data();
  for (auto _ : state) benchmark::DoNotOptimize(grid_weighted_values_serial(g));
}

void BM_weighted_values_omp(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto& g = fixture().grid_data();
  for (auto _ : state) benchmark::DoNotOptimize(grid_weighted_values(g));
}

void BM_shift_deviation_serial(benchmark::State& state) {
  const auto& cells = fixture().grid_data().cells;
  const std::vector<AlgebraElement> a(cells.begin() + 64, cells.end()), b(cells.begin(), cells.end() - 64);
  for (auto _ : state) benchmark::DoNotOptimize(max_relative_deviation_serial(a, b, 0.9));
}

void BM_shift_deviation_omp(benchmark::State& state) {
  omp_set_num_threads(static_cast<int>(state.range(0)));
  const auto& cells = fixture().grid_data().cells;
  const std::vector<AlgebraElement> a(cells.begin() + 64, cells.end()), b(cells.begin(), cells.end() - 64);
  for (auto _ : state) benchmark::DoNotOptimize(max_relative_deviation(a, b, 0.9));
}

}  // namespace

BENCHMARK(BM_weighted_values_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_weighted_values_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shift_deviation_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_shift_deviation_omp)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
