#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qclock/exec.hpp"
#include "qclock/params.hpp"
#include "qclock/tick_stats.hpp"

namespace qclock {

// A seeded batch of independent tick waiting times. Bit-exactly reproducible
// from (params, seed, count): draw i always consumes draw index i of Philox
// stream 0 under `seed`, regardless of execution policy or thread count.
struct TickSample {
  std::uint64_t seed = 0;
  std::vector<double> tick_times;
  std::size_t count = 0;
};

// Inverse-hazard sampling: u ~ Exp(1) is split into whole cycles
// q = floor(u / cycle_hazard) plus a remainder, and the remainder is solved
// within one cycle by bracketed root-finding on the checkpoint table
// (absolute time tolerance 1e-12 * pi / g). Throws DegenerateProfileError
// when the cycle hazard is exactly zero (amplitude underflow).
TickSample sample_ticks(const HazardModel& model, std::size_t count,
                        std::uint64_t seed, Exec exec = Exec::serial);

// Same, for the driven clock built from params.
TickSample sample_ticks(const ClockParams& params, std::size_t count,
                        std::uint64_t seed, Exec exec = Exec::serial);

struct EmpiricalMetrics {
  double t_bar_hat = 0.0;  // sample mean
  double t_bar_se = 0.0;   // bootstrap standard error of the mean
  double N_hat = 0.0;      // t_bar_hat^2 / unbiased sample variance
  double N_se = 0.0;       // bootstrap standard error of N_hat
  double R_hat = 0.0;      // 1 / t_bar_hat
  std::size_t count = 0;
};

// Estimators for the clock metrics plus nonparametric bootstrap standard
// errors (1000 resamples, resample r drawing its indices from Philox stream
// 1 + r under the sample's own seed, so the uncertainty is as reproducible
// as the data). Throws DegenerateProfileError on zero sample variance and
// NumericalError if more than 1% of resamples degenerate.
EmpiricalMetrics empirical_metrics(const TickSample& sample,
                                   Exec exec = Exec::serial);

}  // namespace qclock
