#include <cmath>

#include <benchmark/benchmark.h>

#include "tiltzeta/dirichlet.hpp"
#include "tiltzeta/moment_theory.hpp"
#include "tiltzeta/primes.hpp"
#include "tiltzeta/tilted.hpp"
#include "tiltzeta/zeta.hpp"

using namespace tiltzeta;

static void BM_ZetaHalf(benchmark::State& state) {
    const double t0 = static_cast<double>(state.range(0));
    double t = t0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta_half(t));
        t += 0.01;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ZetaHalf)->Arg(1000)->Arg(100000)->Arg(10000000);

static void BM_ZetaHalfExtended(benchmark::State& state) {
    double t = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta_half(t, Precision::extended));
        t += 0.01;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ZetaHalfExtended)->Arg(100000);

static void BM_Sieve(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(sieve_primes(x).size());
}
BENCHMARK(BM_Sieve)->Arg(1000000)->Arg(10000000);

static void BM_EvalP(benchmark::State& state) {
    const PrimeTable table(static_cast<double>(state.range(0)));
    double t = 1e5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_P(t, table));
        t += 0.01;
    }
}
BENCHMARK(BM_EvalP)->Arg(100)->Arg(10000);

static void BM_FindZeros(benchmark::State& state) {
    const double T = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(find_zeros(10, T).gammas.size());
}
BENCHMARK(BM_FindZeros)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_MixedMomentTable(benchmark::State& state) {
    const PrimeTable table(static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(MixedMomentTable(table, 4).max_degree());
}
BENCHMARK(BM_MixedMomentTable)->Arg(1000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_WeightedIntegral(benchmark::State& state) {
    const GridSpec grid = make_grid(1e4);
    const SweepOptions opts{static_cast<int>(state.range(0)), Precision::standard};
    for (auto _ : state) benchmark::DoNotOptimize(weighted_integral([](double) { return 1.0; }, grid, opts).value);
}
BENCHMARK(BM_WeightedIntegral)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
