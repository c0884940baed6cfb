#include "sphgap/curvature.hpp"
#include "sphgap/immersion.hpp"

#include <benchmark/benchmark.h>

using namespace sphgap;

static void BM_shape_operator(benchmark::State& state) {
    const ChartedImmersion torus = make_clifford(1, 2);
    Eigen::VectorXd u(2);
    u << 1.0, 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(shape_operator(torus, u, 1e-4).S);
}
BENCHMARK(BM_shape_operator);

static void BM_unit_normal(benchmark::State& state) {
    const ChartedImmersion torus = make_clifford(1, 2);
    Eigen::VectorXd u(2);
    u << 1.0, 2.0;
    for (auto _ : state) benchmark::DoNotOptimize(torus.unit_normal(u).sum());
}
BENCHMARK(BM_unit_normal);

static void BM_simons_residual(benchmark::State& state) {
    const ChartedImmersion torus = make_clifford(1, 2);
    Eigen::VectorXd u(2);
    u << 1.0, 2.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(simons_residual(torus, u).identity_residual);
}
BENCHMARK(BM_simons_residual);
