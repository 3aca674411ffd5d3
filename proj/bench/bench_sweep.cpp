// Serial vs OpenMP for the three parallel loops: indicator windows, the
// equilibrium H grid and the seed ensemble. Thread count via OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "tipwatch/calibration.hpp"
#include "tipwatch/colored_noise.hpp"
#include "tipwatch/equilibria.hpp"
#include "tipwatch/preset.hpp"
#include "tipwatch/upsilon.hpp"

using namespace tipwatch;

namespace {

const TimeSeries& series() {
  static const TimeSeries s = box::colored_noise_series(2000, 0.5, 0.0, 0.9, 1.0, 5.0, 1);
  return s;
}

upsilon::SelectionConfig config() {
  upsilon::SelectionConfig c;
  c.p_max = c.q_max = 2;
  c.tau = 350;
  c.stride = 75;
  return c;
}

void BM_IndicatorSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(upsilon::run_indicator_serial(series(), config()));
}

void BM_IndicatorParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(upsilon::run_indicator(series(), config()));
}

void BM_EquilibriaSerial(benchmark::State& st) {
  const box::BoxModelParams p;
  for (auto _ : st) benchmark::DoNotOptimize(box::equilibrium_sweep_serial(-0.5, 0.6, 111, p));
}

void BM_EquilibriaParallel(benchmark::State& st) {
  const box::BoxModelParams p;
  for (auto _ : st) benchmark::DoNotOptimize(box::equilibrium_sweep(-0.5, 0.6, 111, p));
}

void BM_EnsembleSerial(benchmark::State& st) {
  const auto r = builtin_preset("r_tip");
  for (auto _ : st)
    benchmark::DoNotOptimize(
        box::count_transitions_serial(r.scenario, r.params, box::TransitionTest::EndsLower, 8));
}

void BM_EnsembleParallel(benchmark::State& st) {
  const auto r = builtin_preset("r_tip");
  for (auto _ : st)
    benchmark::DoNotOptimize(
        box::count_transitions(r.scenario, r.params, box::TransitionTest::EndsLower, 8));
}

}  // namespace

BENCHMARK(BM_IndicatorSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IndicatorParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EquilibriaSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EquilibriaParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_EnsembleParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
