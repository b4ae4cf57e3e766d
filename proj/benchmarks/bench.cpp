#include <benchmark/benchmark.h>

#include "x0quintic/classifier.hpp"
#include "x0quintic/cs_filter.hpp"
#include "x0quintic/elliptic.hpp"
#include "x0quintic/hom_lattice.hpp"
#include "x0quintic/invariants.hpp"

namespace {

x0q::Engine& engine() {
  static x0q::Engine eng = x0q::Engine::bundled({.offline = true});
  return eng;
}

void BM_GenusSweep(benchmark::State& st) {
  const auto hi = st.range(0);
  for (auto _ : st)
    for (x0q::i64 N = 1; N <= hi; ++N) benchmark::DoNotOptimize(x0q::genus(N));
}
BENCHMARK(BM_GenusSweep)->Arg(1000)->Arg(10000);

void BM_QuotientGenera(benchmark::State& st) {
  for (auto _ : st)
    for (x0q::i64 N = 2; N <= 600; ++N)
      for (auto d : x0q::hall_divisors(N)) benchmark::DoNotOptimize(x0q::quotient_genus(N, d));
}
BENCHMARK(BM_QuotientGenera);

void BM_PointCount(benchmark::State& st) {
  const auto* E = engine().curves().find("37.a1");
  const auto p = st.range(0);
  for (auto _ : st) benchmark::DoNotOptimize(x0q::ap(*E, p));
}
BENCHMARK(BM_PointCount)->Arg(101)->Arg(997)->Arg(7919);

void BM_GramAndValues(benchmark::State& st) {
  const auto* E = engine().curves().find("37.a1");
  for (auto _ : st) {
    auto Q = x0q::gram_matrix(*E, 37 * 12);
    benchmark::DoNotOptimize(x0q::represented_values(Q, 5));
  }
}
BENCHMARK(BM_GramAndValues);

void BM_CsSearch(benchmark::State& st) {
  const auto& gon = engine().gonality();
  for (auto _ : st)
    for (x0q::i64 N = 100; N <= 200; ++N) benchmark::DoNotOptimize(x0q::cs_search(N, 0, gon));
}
BENCHMARK(BM_CsSearch);

void BM_ClassifyRange(benchmark::State& st) {
  const auto threads = static_cast<unsigned>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(engine().classify_range(1, 467, threads));
}
BENCHMARK(BM_ClassifyRange)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
