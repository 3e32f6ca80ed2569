#include <benchmark/benchmark.h>

#include "brinkstab/baseflow.hpp"
#include "brinkstab/energystab.hpp"
#include "brinkstab/evolve.hpp"
#include "brinkstab/linstab.hpp"
#include "brinkstab/spectral.hpp"

using namespace brinkstab;

static void BM_BuildGrid(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    SpectralGrid g = build_grid(N);
    benchmark::DoNotOptimize(g.D4.data());
  }
}
BENCHMARK(BM_BuildGrid)->Arg(64)->Arg(128);

static void BM_ProfileEval(benchmark::State& state) {
  BaseFlow flow(7.5);
  double z = -1.0;
  for (auto _ : state) {
    z = z >= 1.0 ? -1.0 : z + 1e-3;
    benchmark::DoNotOptimize(flow.eval(z));
  }
}
BENCHMARK(BM_ProfileEval);

static void BM_ModalSpectrum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_growth_rate(0.0, 8000.0, 1.0, N));
  }
}
BENCHMARK(BM_ModalSpectrum)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

static void BM_EnergyEigen(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(orr_min_positive_RE(0.0, 2.1, N));
  }
}
BENCHMARK(BM_EnergyEigen)->Arg(48)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_Energy3D(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy3d_max({0.0, 2.0, 0.0, N}));
  }
}
BENCHMARK(BM_Energy3D)->Arg(40)->Arg(48)->Unit(benchmark::kMillisecond);

static void BM_IntegratorStep(benchmark::State& state) {
  EvolveConfig cfg;
  cfg.M = 0.0;
  cfg.R = 80.0;
  cfg.a = 2.0;
  cfg.N = static_cast<int>(state.range(0));
  SpanwiseIntegrator integ(cfg);
  integ.set_state(initial_state(cfg));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integ.step().data());
  }
}
BENCHMARK(BM_IntegratorStep)->Arg(48)->Arg(64);

BENCHMARK_MAIN();
