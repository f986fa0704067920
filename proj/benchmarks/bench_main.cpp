#include <benchmark/benchmark.h>

#include "dias/cover.hpp"
#include "dias/sweep.hpp"
#include "dias/verify.hpp"

namespace {

using namespace dias;

void BM_FieldEval(benchmark::State& state) {
  const auto u = random_field(1, 0.1);
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(u.eval({x, 0.37}));
    x += 1e-7;
  }
}
BENCHMARK(BM_FieldEval);

void BM_SweepCycleLength(benchmark::State& state) {
  const auto u = random_field(2, 0.1);
  const double alpha = state.range(0) / 100.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metric_length(sweep_cycle(0.3, alpha).cycle, u));
  }
}
BENCHMARK(BM_SweepCycleLength)->Arg(25)->Arg(75);

void BM_SupSlope(benchmark::State& state) {
  const auto u = random_field(3, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(sup_slope(u, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SupSlope)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_StokesResidual(benchmark::State& state) {
  const auto u = random_field(4, 0.2);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(stokes_residual(u, 0.13, 0.3, {n, 8, n}));
}
BENCHMARK(BM_StokesResidual)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_TheoremCheck(benchmark::State& state) {
  const auto u = random_field(5, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(theorem_check(u));
}
BENCHMARK(BM_TheoremCheck)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
