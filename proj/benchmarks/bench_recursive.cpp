#include <benchmark/benchmark.h>

#include "infostab/recursive.hpp"

using namespace infostab;

namespace {

MeasureSequence make_sequence() {
  const Alpha alpha(-1.0);
  return MeasureSequence{EvaluableFunction::family({1.25, -0.75}, alpha), alpha};
}

void BM_EvalMeasure(benchmark::State& state) {
  const MeasureSequence seq = make_sequence();
  const int n = static_cast<int>(state.range(0));
  std::vector<double> coords(static_cast<std::size_t>(n), 1.0 / n);
  const SimplexPoint p(coords);
  for (auto _ : state) benchmark::DoNotOptimize(eval_measure(seq, p));
}
BENCHMARK(BM_EvalMeasure)->Arg(4)->Arg(8);

void BM_MeasureGapTable(benchmark::State& state) {
  const MeasureSequence seq = make_sequence();
  const JParams jp = params_from_fit(1.25, -0.75, Alpha(-1.0));
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(measure_gap_table(seq, jp, 6, m).size());
}
BENCHMARK(BM_MeasureGapTable)->Arg(12)->Arg(18);

void BM_GridSimplex(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(grid_simplex(8, 24).size());
}
BENCHMARK(BM_GridSimplex);

}  // namespace

BENCHMARK_MAIN();
