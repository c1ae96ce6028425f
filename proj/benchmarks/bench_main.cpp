#include <benchmark/benchmark.h>

#include "sgspec/generators.hpp"
#include "sgspec/localweak.hpp"
#include "sgspec/rde.hpp"
#include "sgspec/spectral.hpp"

using namespace sgspec;

static void BM_Eigenvalues(benchmark::State& state) {
    const auto n = static_cast<Vertex>(state.range(0));
    const auto m = spectral::delta_matrix(gen::regular(n, 3, 1), 0);
    for (auto _ : state) benchmark::DoNotOptimize(spectral::eigenvalues(m));
}
BENCHMARK(BM_Eigenvalues)->Arg(250)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_RdeSweep(benchmark::State& state) {
    rde::RdeParams p;
    p.population_size = static_cast<std::size_t>(state.range(0));
    p.sweeps = 1;
    const auto f = DegreeDistribution::poisson(2);
    for (auto _ : state) benchmark::DoNotOptimize(rde::fixed_point(f, 0, {0.3, 0.05}, p));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RdeSweep)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_FixedPoint(benchmark::State& state) {
    rde::RdeParams p;
    p.population_size = 20000;
    p.convergence_tol = 1e-6;
    p.sweeps = 2000;
    const auto f = DegreeDistribution::delta(2);
    for (auto _ : state) benchmark::DoNotOptimize(rde::fixed_point(f, 0, {0.5, 0.05}, p));
}
BENCHMARK(BM_FixedPoint)->Unit(benchmark::kMillisecond);

static void BM_LevyDistance(benchmark::State& state) {
    const auto a = spectral::esd(spectral::delta_matrix(gen::erdos_renyi(1000, 2, 1), 0));
    const auto b = spectral::esd(spectral::delta_matrix(gen::erdos_renyi(1000, 2, 2), 0));
    for (auto _ : state) benchmark::DoNotOptimize(spectral::levy_distance(a, b));
}
BENCHMARK(BM_LevyDistance)->Unit(benchmark::kMicrosecond);

static void BM_BallDistribution(benchmark::State& state) {
    const auto g = gen::erdos_renyi(5000, 2, 1);
    const int r = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lwc::ball_distribution(g, r));
}
BENCHMARK(BM_BallDistribution)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
