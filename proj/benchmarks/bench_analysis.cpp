#include <benchmark/benchmark.h>

#include "infostab/analysis.hpp"

using namespace infostab;

namespace {

void BM_FitFamily(benchmark::State& state) {
  const Alpha alpha(-1.0);
  const GridSpec spec(static_cast<int>(state.range(0)), 1e-3);
  const std::vector<double> xs = sample_grid_1d(spec);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    ys[i] = eval_family({1.5, -0.5}, alpha, xs[i]);
  for (auto _ : state) benchmark::DoNotOptimize(fit_family(xs, ys, alpha).params.c);
}
BENCHMARK(BM_FitFamily)->Arg(50)->Arg(500);

void BM_DistanceToFamily(benchmark::State& state) {
  const Alpha alpha(-1.0);
  const auto f = EvaluableFunction::perturbed({1.0, 0.5}, alpha, {1e-3, -2e-4});
  const GridSpec spec(150, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(distance_to_family(f, alpha, spec).dist_sup);
}
BENCHMARK(BM_DistanceToFamily);

void BM_CounterexampleSearch(benchmark::State& state) {
  const SearchConfig cfg{Alpha(-1.0), 1e-3, GridSpec(60, 1e-3), 4,
                         OptimizerKind::NelderMead, 60, 5, 1e3, 2};
  for (auto _ : state) benchmark::DoNotOptimize(counterexample_search(cfg).best_distance);
}
BENCHMARK(BM_CounterexampleSearch);

}  // namespace

BENCHMARK_MAIN();
