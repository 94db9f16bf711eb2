#include <benchmark/benchmark.h>

#include <memory>

#include "attopair/cavity.hpp"
#include "attopair/registry.hpp"
#include "attopair/repro.hpp"
#include "attopair/spectrum.hpp"

using namespace attopair;

static void BM_ThetaQuadrature(benchmark::State& state) {
  const Spheroid s = Spheroid::from_ratio(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(theta_factor_quadrature(s, 1e-9).theta);
}
BENCHMARK(BM_ThetaQuadrature)->Arg(1)->Arg(4)->Arg(148)->Unit(benchmark::kMillisecond);

static void BM_ThetaMonteCarlo(benchmark::State& state) {
  const Spheroid s = Spheroid::from_ratio(4.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(theta_factor_mc(s, n, 42).theta);
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_ThetaMonteCarlo)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_CorrelationFunction(benchmark::State& state) {
  const auto p = provider_pole(species("He"));
  const auto spec = std::make_shared<const BiphotonSpectrum>(
      spectral_amplitude(*p, gauss_legendre_grid(p->delta_eg(), 2048)));
  const auto grid = symmetric_time_grid(Time::from_au(40.0), static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(correlation_function(spec, grid).value.data());
}
BENCHMARK(BM_CorrelationFunction)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);

static void BM_DecayRate(benchmark::State& state) {
  const auto p = provider_pole(species("He"));
  for (auto _ : state) benchmark::DoNotOptimize(two_photon_decay_rate(*p).rate.au());
}
BENCHMARK(BM_DecayRate)->Unit(benchmark::kMicrosecond);

static void BM_ReproTable(benchmark::State& state) {
  ReproOptions o;
  o.mc_samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(repro_report(o).rows.size());
}
BENCHMARK(BM_ReproTable)->Arg(100'000)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
