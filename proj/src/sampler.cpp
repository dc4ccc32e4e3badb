#include "qclock/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qclock/errors.hpp"
#include "qclock/philox.hpp"
#include "qclock/profile.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"

namespace qclock {

namespace {
constexpr double kPi = std::numbers::pi;

// Cumulative hazard from checkpoint j to phase x (x within interval j),
// evaluated fresh; the root-finder below calls this a handful of times per
// tick.
double segment_hazard(const HazardModel& m, std::size_t j, double x) {
  if (x <= m.xs[j]) return 0.0;
  const double c_over_g = m.profile.params.c / m.profile.params.g;
  return c_over_g * integrate(
                        [&m](double u) { return m.profile.evaluate_phase(u); },
                        m.xs[j], x, 1e-12, 1e-300, 1);
}

// Solves L(x) = target for x in [xs[j], xs[j+1]], where L is the cumulative
// hazard from phase 0. The hazard is nonnegative, so L is monotone and the
// bracket never lies. First probe from a cubic Hermite fit of the checkpoint
// values and slopes; then the Illinois regula-falsi variant (stale endpoint
// weight halved), with a hard bisection every fourth step so the bracket
// shrinks geometrically even where L is locally flat.
double invert_in_interval(const HazardModel& m, std::size_t j, double target) {
  double a = m.xs[j], b = m.xs[j + 1];
  const double L0 = m.Ls[j], L1 = m.Ls[j + 1];
  double fa = L0 - target;
  double fb = L1 - target;
  if (fa >= 0.0) return a;  // target at (or below) the left checkpoint
  if (fb <= 0.0) return b;

  const double tol = 1e-12 * kPi;

  // Hermite probe: parameter s in [0,1], two Newton refinements on the cubic.
  const double h = b - a;
  const double d0 = m.dLs[j] * h, d1 = m.dLs[j + 1] * h;
  const double dL = L1 - L0;
  double s = dL > 0.0 ? (target - L0) / dL : 0.5;
  for (int it = 0; it < 2; ++it) {
    const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    const double h10 = s * (1.0 - s) * (1.0 - s);
    const double h01 = s * s * (3.0 - 2.0 * s);
    const double h11 = s * s * (s - 1.0);
    const double val = h00 * L0 + h10 * d0 + h01 * L1 + h11 * d1 - target;
    const double dh00 = 6.0 * s * (s - 1.0);
    const double dh10 = (1.0 - s) * (1.0 - 3.0 * s);
    const double dh01 = -dh00;
    const double dh11 = s * (3.0 * s - 2.0);
    const double der = dh00 * L0 + dh10 * d0 + dh01 * L1 + dh11 * d1;
    if (der > 0.0) s -= val / der;
    if (!(s > 0.0 && s < 1.0)) s = 0.5;
  }
  double x = a + s * h;

  int last_side = 0;  // -1 while a keeps moving, +1 while b keeps moving
  for (int iter = 0; iter < 256 && b - a > tol; ++iter) {
    const double fx = L0 + segment_hazard(m, j, x) - target;
    if (fx <= 0.0) {
      a = x;
      fa = fx;
      if (last_side == -1) fb *= 0.5;
      last_side = -1;
    } else {
      b = x;
      fb = fx;
      if (last_side == +1) fa *= 0.5;
      last_side = +1;
    }
    if (b - a <= tol) break;
    const double denom = fb - fa;
    double next = denom > 0.0 ? (a * fb - b * fa) / denom : 0.5 * (a + b);
    if (iter % 4 == 3 || !(next > a && next < b)) next = 0.5 * (a + b);
    x = next;
  }
  return 0.5 * (a + b);
}

double invert_cycle(const HazardModel& m, double rem) {
  // Largest checkpoint with Ls <= rem brackets the root on its right.
  const auto it = std::upper_bound(m.Ls.begin(), m.Ls.end(), rem);
  std::size_t j = std::size_t(std::max<std::ptrdiff_t>(it - m.Ls.begin() - 1, 0));
  if (j > m.Ls.size() - 2) j = m.Ls.size() - 2;
  return invert_in_interval(m, j, rem);
}
}  // namespace

TickSample sample_ticks(const HazardModel& model, std::size_t count,
                        std::uint64_t seed, Exec exec) {
  if (count < 1) throw ValidationError("sample count must be at least 1");
  const double lam = model.cycle_hazard;
  if (!(lam > 0.0))
    throw DegenerateProfileError(
        "cycle hazard is exactly zero; the tick time distribution has no "
        "support");

  TickSample out;
  out.seed = seed;
  out.count = count;
  out.tick_times.assign(count, 0.0);
  const double g = model.profile.params.g;
  parallel_for(exec, count, [&](std::size_t i) {
    const double u = philox_exponential_at(seed, 0, i);
    double q = std::floor(u / lam);
    double rem = u - q * lam;
    if (rem < 0.0) rem = 0.0;
    if (rem > lam) rem = lam;
    const double x = invert_cycle(model, rem);
    out.tick_times[i] = (q * kPi + x) / g;
  });
  return out;
}

TickSample sample_ticks(const ClockParams& params, std::size_t count,
                        std::uint64_t seed, Exec exec) {
  params.validate();
  return sample_ticks(build_hazard_model(general_profile(params)), count, seed,
                      exec);
}

EmpiricalMetrics empirical_metrics(const TickSample& sample, Exec exec) {
  const std::size_t n = sample.count;
  if (n < 2 || sample.tick_times.size() != n)
    throw ValidationError("empirical metrics need at least 2 tick times");

  // Two-pass: compensated mean, then compensated unbiased variance.
  const auto mean_var = [](const std::vector<double>& v) {
    KahanSum s;
    for (double x : v) s.add(x);
    const double mean = s.value() / double(v.size());
    KahanSum q;
    for (double x : v) q.add((x - mean) * (x - mean));
    return std::pair<double, double>{mean, q.value() / double(v.size() - 1)};
  };

  const auto [mean, var] = mean_var(sample.tick_times);
  if (var <= 0.0)
    throw DegenerateProfileError("zero sample variance: N_hat undefined");

  EmpiricalMetrics out;
  out.count = n;
  out.t_bar_hat = mean;
  out.N_hat = mean * mean / var;
  out.R_hat = 1.0 / mean;

  constexpr std::size_t kResamples = 1000;
  std::vector<double> boot_mean(kResamples, 0.0), boot_N(kResamples, 0.0);
  std::vector<unsigned char> degenerate(kResamples, 0);
  parallel_for(exec, kResamples, [&](std::size_t r) {
    const std::uint64_t stream = 1 + r;
    KahanSum s;
    std::vector<double> pick(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      pick[i] = sample.tick_times[philox_index_at(sample.seed, stream, i, n)];
      s.add(pick[i]);
    }
    const double m = s.value() / double(n);
    KahanSum q;
    for (double x : pick) q.add((x - m) * (x - m));
    const double v = q.value() / double(n - 1);
    boot_mean[r] = m;
    if (v > 0.0)
      boot_N[r] = m * m / v;
    else
      degenerate[r] = 1;
  });

  std::size_t bad = 0;
  for (unsigned char f : degenerate) bad += f;
  if (bad * 100 > kResamples)
    throw NumericalError("bootstrap collapsed: " + std::to_string(bad) +
                         " of 1000 resamples had zero variance");

  // Standard errors: spread of the estimator over resamples (mean over all,
  // N over the non-degenerate ones).
  const auto spread = [](const std::vector<double>& v,
                         const std::vector<unsigned char>& skip) {
    KahanSum s;
    std::size_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!skip[i]) {
        s.add(v[i]);
        ++m;
      }
    const double mean = s.value() / double(m);
    KahanSum q;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!skip[i]) q.add((v[i] - mean) * (v[i] - mean));
    return std::sqrt(q.value() / double(m - 1));
  };
  const std::vector<unsigned char> none(kResamples, 0);
  out.t_bar_se = spread(boot_mean, none);
  out.N_se = spread(boot_N, degenerate);
  return out;
}

}  // namespace qclock
