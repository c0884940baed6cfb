#include "sphgap/immersion.hpp"
#include "sphgap/quadrature.hpp"

#include <benchmark/benchmark.h>

using namespace sphgap;

namespace {
const ScalarField kOne = [](const Eigen::VectorXd&) { return 1.0; };
}

static void BM_integrate_clifford(benchmark::State& state) {
    const ChartedImmersion torus = make_clifford(1, 2);
    GridSpec grid;
    const int nodes = static_cast<int>(state.range(0));
    grid.nodes_per_dim = {nodes, nodes};
    for (auto _ : state) benchmark::DoNotOptimize(integrate(torus, kOne, grid).value);
    state.SetItemsProcessed(state.iterations() * nodes * nodes);
}
BENCHMARK(BM_integrate_clifford)->Arg(64)->Arg(256);

static void BM_integrate_where_halfspace(benchmark::State& state) {
    const ChartedImmersion torus = make_clifford(1, 2);
    GridSpec grid = GridSpec::defaults_for(torus);
    grid.nodes_per_dim = {static_cast<int>(state.range(0)),
                          static_cast<int>(state.range(0))};
    Eigen::VectorXd a(4);
    a << 0.5, 0.5, 0.5, 0.5;
    for (auto _ : state)
        benchmark::DoNotOptimize(integrate_where(torus, kOne, a, 0.0, 1.0, grid).value);
}
BENCHMARK(BM_integrate_where_halfspace)->Arg(64)->Arg(128);

static void BM_cumulative_profile(benchmark::State& state) {
    const ChartedImmersion torus = make_clifford(1, 2);
    const GridSpec grid = GridSpec::defaults_for(torus);
    Eigen::VectorXd a(4);
    a << 0.5, 0.5, 0.5, 0.5;
    std::vector<double> r_grid;
    for (int i = 0; i < 64; ++i) r_grid.push_back(-1.0 + 2.0 * (i + 0.5) / 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(cumulative_profile(torus, a, kOne, r_grid, grid).size());
}
BENCHMARK(BM_cumulative_profile);
