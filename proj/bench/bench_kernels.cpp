#include <benchmark/benchmark.h>

#include "ageorder/kernels.hpp"
#include "ageorder/oracle.hpp"

using namespace ageorder;
using namespace ageorder::kernels;

namespace {

const HazardVector kLambda{2, 3};
const HazardVector kTheta{1.5, 3.5};

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::Parallel : Exec::Serial; }

void BM_SignCells(benchmark::State& state) {
  const auto a = oracle::uniform_grid(0.4, 1.2, 101);
  const auto x = oracle::uniform_grid(0.0, 20.0, 401);
  for (auto _ : state) benchmark::DoNotOptimize(sign_cells(kLambda, kTheta, 0.0125, a, x, 1e-18, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * a.size() * x.size());
}

void BM_PatternsOverA(benchmark::State& state) {
  const auto a = detail::log_grid(0.3, 2.0, 64);
  for (auto _ : state) benchmark::DoNotOptimize(patterns_over_a(kLambda, kTheta, 0.0125, a, {}, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * a.size());
}

void BM_TransformValues(benchmark::State& state) {
  const auto g = oracle::uniform_grid(0.0, 5.0, 20000);
  const ExpSum sx = survival(kLambda), sy = survival(kTheta);
  for (auto _ : state) benchmark::DoNotOptimize(transform_values(sx, sy, g, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * g.size());
}

void BM_SampleMaxima(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(sample_maxima(HazardVector{1, 2, 3}, 200000, 1, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * 200000);
}

}  // namespace

BENCHMARK(BM_SignCells)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PatternsOverA)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TransformValues)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SampleMaxima)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
