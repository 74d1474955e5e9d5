#include <benchmark/benchmark.h>

#include "onestep/onestep.hpp"

using namespace onestep;

static void BM_StationaryDistribution(benchmark::State& state) {
  const auto chain = build_chain(RateModel::linear(2, 1), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stationary_distribution(chain));
}
BENCHMARK(BM_StationaryDistribution)->RangeMultiplier(10)->Range(100, 100000);

static void BM_NormalizationK(benchmark::State& state) {
  const auto m = RateModel::polynomial({1.0, -1.0, 0.3, -0.3}, {0.0, 1.0});
  const BFunction B(m, equilibrium(m));
  for (auto _ : state) benchmark::DoNotOptimize(normalization_K(B, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_NormalizationK)->RangeMultiplier(8)->Range(100, 6400);

static void BM_BFunctionSetup(benchmark::State& state) {
  const auto m = RateModel::polynomial({1.0, -1.0, 0.3, -0.3}, {0.0, 1.0});
  const double zs = equilibrium(m);
  for (auto _ : state) benchmark::DoNotOptimize(BFunction(m, zs));
}
BENCHMARK(BM_BFunctionSetup);

static void BM_SteadyStateV(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto m = RateModel::linear(2, 1);
  const BFunction B(m, 2.0 / 3.0);
  const double K = normalization_K(B, N);
  const auto grid = lattice_grid(N);
  for (auto _ : state) benchmark::DoNotOptimize(steady_state_v(B, N, K, grid));
}
BENCHMARK(BM_SteadyStateV)->RangeMultiplier(8)->Range(100, 6400);

static void BM_MasterRK4(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  const auto chain = build_chain(RateModel::linear(2, 1), N);
  const auto p0 = Distribution::point_mass(N, 0);
  const double dt = master_stability_limit(chain);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_master(chain, p0, 100 * dt, dt, MasterObserver{}));
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_MasterRK4)->RangeMultiplier(4)->Range(100, 1600);

BENCHMARK_MAIN();
