#include <benchmark/benchmark.h>

#include <random>

#include "poissonplace/analytic.hpp"
#include "poissonplace/density.hpp"
#include "poissonplace/fast_poisson.hpp"
#include "poissonplace/placer.hpp"
#include "poissonplace/synthetic.hpp"

namespace pp = poissonplace;

namespace {

pp::DensityGrid random_grid(std::size_t m) {
  std::mt19937_64 rng(m);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  pp::DensityGrid g(m, {1.0, 1.0});
  for (auto& v : g.values()) v = d(rng);
  g.subtract_mean();
  return g;
}

pp::ExactDensity random_blocks(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> u(0.1, 0.9), s(0.01, 0.05);
  std::vector<pp::Rect> blocks;
  for (std::size_t i = 0; i < n; ++i) blocks.push_back(pp::Rect::centered({u(rng), u(rng)}, s(rng), s(rng)));
  return pp::ExactDensity({1.0, 1.0}, std::move(blocks));
}

void BM_ReducedTransform(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto grid = random_grid(m);
  pp::CosineTransform2D t(m);
  for (auto _ : state) benchmark::DoNotOptimize(pp::reduced_transform(grid, t));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_ReducedTransform)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oNLogN);

void BM_FastSolve(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto grid = random_grid(m);
  pp::CosineTransform2D t(m);
  for (auto _ : state) benchmark::DoNotOptimize(pp::solve_fast(grid, t));
  state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_FastSolve)->RangeMultiplier(2)->Range(16, 1024)->Complexity(benchmark::oNLogN);

void BM_SpectralBaseline(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const auto grid = random_grid(m);
  pp::PeriodicTransform t(m);
  for (auto _ : state) benchmark::DoNotOptimize(pp::spectral_baseline(grid, t));
}
BENCHMARK(BM_SpectralBaseline)->RangeMultiplier(2)->Range(16, 1024);

void BM_NaiveReducedTransform(benchmark::State& state) {
  const auto grid = random_grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pp::naive_reduced_transform(grid));
}
BENCHMARK(BM_NaiveReducedTransform)->RangeMultiplier(2)->Range(8, 32);

void BM_ExactCoefficients(benchmark::State& state) {
  const auto density = random_blocks(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pp::exact_coefficients(density, 31));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactCoefficients)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_BinDensity(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const double side = std::sqrt(20.0 * static_cast<double>(n));
  const auto circuit = pp::generate_synthetic(n, n, {side, side}, 1);
  const auto placement = circuit.placement();
  const std::size_t m = pp::default_bins(n);
  for (auto _ : state) benchmark::DoNotOptimize(pp::build_bin_density(circuit, placement, m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BinDensity)->RangeMultiplier(4)->Range(1024, 65536)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();
