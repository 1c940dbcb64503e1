/**
 * @file bench_kernels.cpp
 * @brief Serial reference vs OpenMP kernels: Monte Carlo trials and snapshot collection.
 */
#include <benchmark/benchmark.h>

#include <omp.h>

#include "relaylab/covariance.hpp"
#include "relaylab/montecarlo.hpp"
#include "relaylab/scenario.hpp"

using namespace relaylab;

namespace {

const Scenario& table1_scenario(Scheme scheme) {
  static const Scenario mrc = [] {
    SystemConfig c;
    c.scheme = Scheme::mrc;
    return build_scenario(c, 1);
  }();
  static const Scenario zf = build_scenario(SystemConfig{}, 1);
  return scheme == Scheme::mrc ? mrc : zf;
}

void trials(benchmark::State& state, Kernel kernel) {
  const Scheme scheme = state.range(0) == 0 ? Scheme::mrc : Scheme::zf;
  const TrialContext ctx(table1_scenario(scheme));
  const long n = 256;
  for (auto _ : state) {
    auto rec = run_trials(ctx, n, 7, kernel);
    benchmark::DoNotOptimize(rec.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
  state.SetLabel(to_string(scheme));
}

void BM_TrialsSerial(benchmark::State& s) { trials(s, Kernel::serial); }
void BM_TrialsParallel(benchmark::State& s) { trials(s, Kernel::parallel); }

void BM_Snapshots(benchmark::State& state) {
  CovarianceModelParams p;
  p.angle_spread = 0.6;
  const CovarianceMatrix r = build_covariance(p, 120);
  const SoundingBeamformers sb = dft_sounding_beamformers(120, 20);
  const int workers = static_cast<int>(state.range(0));
  omp_set_num_threads(workers);
  for (auto _ : state) {
    const SnapshotSet s = collect_snapshots(r, sb, 1.0, 1.0, 200, 3);
    benchmark::DoNotOptimize(s.y.data());
  }
  state.SetItemsProcessed(state.iterations() * 200);
  state.SetLabel(std::to_string(workers) + " threads");
}

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Snapshots)->Arg(1)->Arg(omp_get_max_threads())->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
