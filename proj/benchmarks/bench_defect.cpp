#include <benchmark/benchmark.h>

#include "infostab/defect.hpp"

using namespace infostab;

namespace {

void BM_FeDefectPoint(benchmark::State& state) {
  const Alpha alpha(-1.0);
  const auto f = EvaluableFunction::perturbed({1.0, 0.5}, alpha, {1e-3, 2e-4});
  const D2Point p(0.37, 0.21);
  for (auto _ : state) benchmark::DoNotOptimize(fe_defect(f, alpha, p));
}
BENCHMARK(BM_FeDefectPoint);

void BM_FeDefectSup(benchmark::State& state) {
  const Alpha alpha(-1.0);
  const auto f = EvaluableFunction::perturbed({1.0, 0.5}, alpha, {1e-3});
  const GridSpec spec(static_cast<int>(state.range(0)), 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(fe_defect_sup(f, alpha, spec).sup_defect);
  state.SetItemsProcessed(state.iterations() * spec.resolution * (spec.resolution - 1) / 2);
}
BENCHMARK(BM_FeDefectSup)->Arg(100)->Arg(200);

void BM_CocycleResidual(benchmark::State& state) {
  const Alpha alpha(-2.0);
  const auto f = EvaluableFunction::perturbed({0.4, -1.1}, alpha, {0.3, -0.2, 0.1});
  const D3Point q(0.2, 0.3, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(cocycle_residual(f, alpha, q));
}
BENCHMARK(BM_CocycleResidual);

void BM_ScalingProbe(benchmark::State& state) {
  const Alpha alpha(-1.0);
  const auto g = EvaluableFunction::perturbed({0.0, 0.0}, alpha, {1.0});
  const std::vector<double> margins{1e-2, 1e-3, 1e-4};
  for (auto _ : state)
    benchmark::DoNotOptimize(scaling_exponent({1.0, 0.0}, g, 1e-3, alpha, margins, 60).slope);
}
BENCHMARK(BM_ScalingProbe);

}  // namespace

BENCHMARK_MAIN();
