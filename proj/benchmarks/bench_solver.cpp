#include <benchmark/benchmark.h>

#include "gco/bench.hpp"
#include "gco/centering.hpp"

namespace {

void BM_ZetaEvalShort(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto p = gco::generate_lrqi(m, 2 * m, 5);
  auto oracle = gco::make_zeta_oracle(p);
  gco::Vec y(m, 0.0);
  for (auto _ : state) {
    auto ev = oracle->eval(y);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_ZetaEvalShort)->RangeMultiplier(2)->Range(16, 128);

void BM_ZetaEvalGeneric(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  auto p = gco::generate_lrqi(m, 2 * m, 5);
  auto oracle = gco::make_zeta_oracle(p, /*force_generic=*/true);
  gco::Vec y(m, 0.0);
  for (auto _ : state) {
    auto ev = oracle->eval(y);
    benchmark::DoNotOptimize(ev.value);
  }
}
BENCHMARK(BM_ZetaEvalGeneric)->RangeMultiplier(2)->Range(16, 64);

void BM_SolveLrqi(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int n = 2 * m;
  for (auto _ : state) {
    auto p = gco::generate_lrqi(m, n, 7);
    auto sol = gco::solve(p);
    benchmark::DoNotOptimize(sol.gap);
  }
}
BENCHMARK(BM_SolveLrqi)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
