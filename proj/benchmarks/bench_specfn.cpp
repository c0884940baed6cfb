#include "sphgap/specfn.hpp"

#include <benchmark/benchmark.h>

namespace sf = sphgap::specfn;

static void BM_log_gamma(benchmark::State& state) {
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::log_gamma(x));
        x += 0.37;
        if (x > 1e6) x = 0.5;
    }
}
BENCHMARK(BM_log_gamma);

static void BM_gap_p(benchmark::State& state) {
    int n = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sf::gap_p(n));
        n = n % 512 + 2;
    }
}
BENCHMARK(BM_gap_p);

static void BM_clifford_volume_sweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        double acc = 0.0;
        for (int k = 1; k <= n - 1; ++k) acc += sf::log_clifford_volume(k, n);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_clifford_volume_sweep)->Arg(10)->Arg(100);

BENCHMARK_MAIN();
