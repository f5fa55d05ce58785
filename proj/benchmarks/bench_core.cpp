#include <benchmark/benchmark.h>

#include "markovnik/analysis.hpp"
#include "markovnik/cone.hpp"
#include "markovnik/constants.hpp"
#include "markovnik/norms.hpp"
#include "markovnik/polynomial.hpp"

using namespace markovnik;

static void BM_Eval(benchmark::State& state) {
  const Polynomial p = chebyshev_t(static_cast<int>(state.range(0)));
  double x = -0.9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval(p, x));
    x = x > 0.9 ? -0.9 : x + 1e-3;
  }
}
BENCHMARK(BM_Eval)->Arg(10)->Arg(40)->Arg(100);

static void BM_LpNorm(benchmark::State& state) {
  const Polynomial p = random_cone_member(ConeSpec::abs_monotone(1, static_cast<int>(state.range(0))), 1);
  const NormParam half = NormParam::parse("1/2");
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(p, half));
}
BENCHMARK(BM_LpNorm)->Arg(8)->Arg(32)->Arg(128);

static void BM_SupNorm(benchmark::State& state) {
  const Polynomial p = chebyshev_t(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lp_norm(p, NormParam::infinity()));
}
BENCHMARK(BM_SupNorm)->Arg(10)->Arg(40);

static void BM_Roots(benchmark::State& state) {
  const Polynomial p = chebyshev_t(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(roots_in_interval(p, kUnitInterval, 1e-13));
}
BENCHMARK(BM_Roots)->Arg(10)->Arg(40);

static void BM_KrooSzabados(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(kroo_szabados_sup(static_cast<int>(state.range(0)), 2));
}
BENCHMARK(BM_KrooSzabados)->Arg(50)->Arg(200);

static void BM_BruteForce(benchmark::State& state) {
  const NormParam inf = NormParam::infinity();
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_sup(ConeSpec::abs_monotone(2, 4), 1, inf, inf, static_cast<int>(state.range(0)), 1));
  }
}
BENCHMARK(BM_BruteForce)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
