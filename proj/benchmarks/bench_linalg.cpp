#include <benchmark/benchmark.h>

#include "gco/bench.hpp"
#include "gco/linalg.hpp"

using namespace gco::linalg;

namespace {

SymMatrix random_spd(int n, uint64_t seed) {
  gco::SplitMix64 rng(seed);
  SymMatrix r(n);
  for (auto& v : r.a) v = rng.uniform(-1.0, 1.0);
  SymMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += r(i, k) * r(j, k);
      m(i, j) = s;
    }
  for (int i = 0; i < n; ++i) m(i, i) += n;
  return m;
}

void BM_Cholesky(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto m = random_spd(n, 1);
  for (auto _ : state) {
    auto l = cholesky(m);
    benchmark::DoNotOptimize(l.a.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Cholesky)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_Tridiagonalize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto m = random_spd(n, 2);
  for (auto _ : state) {
    auto t = householder_tridiagonalize(m);
    benchmark::DoNotOptimize(t.d.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Tridiagonalize)->RangeMultiplier(2)->Range(32, 512)->Complexity();

void BM_TridiagLogdet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  gco::SplitMix64 rng(3);
  Tridiag t;
  t.d.resize(n);
  t.e.resize(n - 1);
  for (auto& v : t.d) v = rng.uniform(-0.2, 0.2);
  for (auto& v : t.e) v = rng.uniform(-0.1, 0.1);
  for (auto _ : state) {
    auto r = tridiag_logdet(t, 1.0, 0.7);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TridiagLogdet)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

}  // namespace

BENCHMARK_MAIN();
