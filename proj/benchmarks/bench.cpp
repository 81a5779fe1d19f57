// Micro benchmarks for the hot paths: increment simulation, the ECF
// recurrence (the cost driver, n * M^d trig-free updates per field), the
// FFTW-backed inversion, and one small end-to-end estimate.

#include <benchmark/benchmark.h>

#include <complex>
#include <cstdint>
#include <vector>

#include "levyest/estimator.hpp"
#include "levyest/fourier.hpp"
#include "levyest/sim.hpp"
#include "levyest/spectral.hpp"

using namespace levyest;

namespace {

LevyModelSpec cpp2d(double intensity) {
  LevyModelSpec spec;
  spec.dimension = 2;
  CompoundPoissonPart cp;
  cp.intensity = intensity;
  cp.jump_mean = {0.0, 0.0};
  cp.jump_cov = {1.0, 0.0, 0.0, 1.0};
  spec.cpp_parts.push_back(cp);
  return spec;
}

void bm_simulate_cpp2d(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  const auto spec = cpp2d(100.0);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto s = simulate_model(spec, 0.001, n, seed++);
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}
BENCHMARK(bm_simulate_cpp2d)->Arg(10000)->Arg(100000);

void bm_simulate_vg2d(benchmark::State& state) {
  const auto n = std::size_t(state.range(0));
  LevyModelSpec spec;
  spec.dimension = 2;
  spec.vg.push_back(VarianceGammaPart{0.5});
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto s = simulate_model(spec, 0.1, n, seed++);
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n));
}
BENCHMARK(bm_simulate_vg2d)->Arg(10000)->Arg(100000);

void bm_ecf_2d(benchmark::State& state) {
  const auto m = int(state.range(0));
  const auto n = std::size_t(state.range(1));
  auto s = simulate_model(cpp2d(100.0), 0.001, n, 7);
  FreqGrid grid(2, m, 8.0);
  for (auto _ : state) {
    auto f = ecf(s, grid);
    benchmark::DoNotOptimize(f.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n) * int64_t(grid.size()));
}
BENCHMARK(bm_ecf_2d)->Args({32, 10000})->Args({64, 10000})->Args({64, 100000});

void bm_ecf_derivatives_2d(benchmark::State& state) {
  const auto m = int(state.range(0));
  const auto n = std::size_t(state.range(1));
  auto s = simulate_model(cpp2d(100.0), 0.001, n, 7);
  FreqGrid grid(2, m, 8.0);
  for (auto _ : state) {
    auto f = ecf_derivatives(s, grid);
    benchmark::DoNotOptimize(f.value.values.data());
  }
  state.SetItemsProcessed(int64_t(state.iterations()) * int64_t(n) * int64_t(grid.size()));
}
BENCHMARK(bm_ecf_derivatives_2d)->Args({64, 10000});

void bm_inverse_fft(benchmark::State& state) {
  const auto m = int(state.range(0));
  FreqGrid grid(2, m, 8.0);
  ComplexField f{grid, {}, {}};
  f.values.assign(grid.size(), {0.7, 0.0});
  for (auto _ : state) {
    auto inv = inverse_fourier_fft(f);
    benchmark::DoNotOptimize(inv.values.data());
  }
}
BENCHMARK(bm_inverse_fft)->Arg(64)->Arg(192)->Arg(256);

void bm_estimate_small(benchmark::State& state) {
  auto s = simulate_model(cpp2d(100.0), 0.001, 10000, 7);
  EstimatorConfig cfg;
  cfg.grid_points = 64;
  cfg.grid_u_max = 8.0;
  cfg.kernel.bandwidth = bandwidth_sim_default(s.horizon());
  for (auto _ : state) {
    auto est = estimate_levy_density(s, cfg);
    benchmark::DoNotOptimize(est.xsq_nu_hat.values.data());
  }
}
BENCHMARK(bm_estimate_small);

}  // namespace

BENCHMARK_MAIN();
