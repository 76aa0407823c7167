#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "dgl/degennes.hpp"
#include "dgl/glmin.hpp"
#include "dgl/perturbed.hpp"
#include "dgl/tridiag.hpp"

namespace {

void BM_MuCharacteristic(benchmark::State& state) {
  const int j = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dgl::mu_value(j, 0.77));
}
BENCHMARK(BM_MuCharacteristic)->Arg(1)->Arg(2)->Arg(3);

void BM_MuFiniteDifference(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(dgl::mu_value(1, 0.77, dgl::Method::finite_difference));
}
BENCHMARK(BM_MuFiniteDifference)->Unit(benchmark::kMillisecond);

// harmonic oscillator on a uniform grid, h = 10 / n
void BM_EigTridiag(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double h = 10.0 / static_cast<double>(n);
  std::vector<double> diag(n), off(n - 1, -1.0 / (h * h));
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (static_cast<double>(i) + 1.0) * h - 5.0;
    diag[i] = 2.0 / (h * h) + t * t;
  }
  for (auto _ : state) benchmark::DoNotOptimize(dgl::eig_tridiag(diag, off, 2));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EigTridiag)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_MinimizeFunctional(benchmark::State& state) {
  const dgl::GridSpec grid = dgl::profile_grid(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(dgl::minimize_functional(0.8, 0.8, grid).energy);
}
BENCHMARK(BM_MinimizeFunctional)->Unit(benchmark::kMillisecond);

void BM_Zeta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(dgl::zeta(0.8).zeta);
}
BENCHMARK(BM_Zeta)->Unit(benchmark::kMillisecond);

void BM_PerturbedSpectrum(benchmark::State& state) {
  const dgl::ZetaRecord rec = dgl::zeta(0.8);
  for (auto _ : state) benchmark::DoNotOptimize(dgl::spectrum(0.8, 1.0, rec).lambda1());
}
BENCHMARK(BM_PerturbedSpectrum)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
