// Serial vs OpenMP timings for every parallel region in the library. The
// parallel path must be bit-identical to the serial one (test_parallel
// enforces that); these benchmarks show what the parallelism buys.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "qclock/exec.hpp"
#include "qclock/oracle.hpp"
#include "qclock/profile.hpp"
#include "qclock/sampler.hpp"
#include "qclock/sweep.hpp"
#include "qclock/tick_stats.hpp"

using namespace qclock;

namespace {

Exec arg_exec(const benchmark::State& state) {
  return state.range(0) ? Exec::openmp : Exec::serial;
}

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "openmp" : "serial");
}

// Metric fan-out across sweep points (one moments pipeline per point).
void BM_sweep_points(benchmark::State& state) {
  label(state);
  SweepConfig cfg;
  cfg.base.M = MachineCount::infinite();
  cfg.base.c = 1e3;
  cfg.axis = SweepAxis::d;
  for (int d = 2; d <= 24; ++d) cfg.values.push_back(double(d));
  for (auto _ : state) {
    Table t = run_sweep(cfg, arg_exec(state));
    benchmark::DoNotOptimize(t.rows.data());
  }
}
BENCHMARK(BM_sweep_points)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Phase reconstruction across time points after one eigendecomposition.
void BM_oracle_times(benchmark::State& state) {
  label(state);
  ClockParams p;
  p.d = 3;
  p.M = MachineCount::finite(2);
  p.beta_C = 3.0;
  p.beta_H = 0.1;
  const OracleSystem system = build_oracle(p);
  std::vector<double> times;
  for (int i = 0; i < 200; ++i)
    times.push_back(2.0 * std::numbers::pi * double(i) / 199.0);
  for (auto _ : state) {
    EvolutionResult r = evolve_p_top(system, times, arg_exec(state));
    benchmark::DoNotOptimize(r.p_top.data());
  }
}
BENCHMARK(BM_oracle_times)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Independent tick draws (hazard inversion per tick).
void BM_sample_ticks(benchmark::State& state) {
  label(state);
  ClockParams p;
  p.d = 10;
  p.M = MachineCount::finite(5);
  p.c = 25.0;
  const HazardModel model = build_hazard_model(general_profile(p));
  for (auto _ : state) {
    TickSample s = sample_ticks(model, 20000, 7, arg_exec(state));
    benchmark::DoNotOptimize(s.tick_times.data());
  }
}
BENCHMARK(BM_sample_ticks)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

// Bootstrap resampling of the empirical estimators.
void BM_bootstrap(benchmark::State& state) {
  label(state);
  ClockParams p;
  p.d = 10;
  p.M = MachineCount::finite(5);
  p.c = 25.0;
  const HazardModel model = build_hazard_model(general_profile(p));
  const TickSample sample = sample_ticks(model, 20000, 7, Exec::openmp);
  for (auto _ : state) {
    EmpiricalMetrics m = empirical_metrics(sample, arg_exec(state));
    benchmark::DoNotOptimize(m.N_hat);
  }
}
BENCHMARK(BM_bootstrap)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
