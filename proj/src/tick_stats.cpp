#include "qclock/tick_stats.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "qclock/errors.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"

namespace qclock {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr int kTableIntervals = 1024;

// Hazard below this is indistinguishable from a dead clock: moments refuse
// (R -> 0 makes N meaningless), matching the degenerate-profile contract.
constexpr double kDegenerateCycleHazard = 1e-14;
// Above this Lambda_cycle the moments are clean; below it 1 - r has lost
// enough digits that delta_t inherits visible roundoff.
constexpr double kPrecisionWarnCycleHazard = 1e-12;

// The log-domain profile evaluation exp(sum of up to ~4d log terms) carries
// relative noise of order d * machine epsilon; a quadrature target below
// that floor can never be met, however finely the interval is split.
double profile_noise_floor(const ClockParams& p) {
  return 16.0 * std::numeric_limits<double>::epsilon() * double(p.d);
}
}  // namespace

double sin_power_antiderivative(int n, double x) {
  if (n < 0) throw ValidationError("sin_power_antiderivative: negative exponent");
  if (n == 0) return x;
  const double log4n = n * std::log(4.0);
  KahanSum acc;
  acc.add(std::exp(lchoose(2 * n, n) - log4n) * x);
  for (int p = 1; p <= n; ++p) {
    const double mag = std::exp(lchoose(2 * n, n - p) - log4n) / p;
    const double term = (p & 1) ? -mag : mag;
    acc.add(term * std::sin(2.0 * p * x));
  }
  return acc.value();
}

HazardModel build_hazard_model(const TopLevelProfile& profile) {
  HazardModel m;
  m.profile = profile;
  const double c_over_g = profile.params.c / profile.params.g;

  KahanSum cycle;
  cycle.add(profile.constant * kPi);
  for (const ProfileTerm& t : profile.terms)
    cycle.add(t.weight * trig_power_integral_pi(t.cos_pow / 2, t.sin_pow / 2));
  m.cycle_hazard = c_over_g * cycle.value();

  m.xs.resize(kTableIntervals + 1);
  m.Ls.resize(kTableIntervals + 1);
  m.dLs.resize(kTableIntervals + 1);
  const auto phase_p = [&profile](double x) { return profile.evaluate_phase(x); };
  // Relative target capped below the 1e-9 self-check; the absolute floor
  // hands negligible-mass intervals (far tails of sharp profiles) their
  // share of the cycle total instead of demanding relative digits of 1e-280.
  const double rel_table =
      std::min(2e-10, std::max(1e-13, profile_noise_floor(profile.params)));
  const double floor_table = std::max(1e-300, 1e-15 * cycle.value());
  KahanSum running;
  m.xs[0] = 0.0;
  m.Ls[0] = 0.0;
  m.dLs[0] = c_over_g * phase_p(0.0);
  for (int i = 1; i <= kTableIntervals; ++i) {
    m.xs[i] = kPi * i / kTableIntervals;
    running.add(integrate(phase_p, m.xs[i - 1], m.xs[i], rel_table, floor_table, 1));
    m.Ls[i] = c_over_g * running.value();
    m.dLs[i] = c_over_g * phase_p(m.xs[i]);
  }

  // The table must land on the exact coefficient sum; a disagreement means
  // the quadrature missed structure and the table cannot be trusted.
  if (m.cycle_hazard >= 1e-300) {
    const double got = m.Ls[kTableIntervals];
    if (std::abs(got - m.cycle_hazard) > 1e-9 * m.cycle_hazard)
      throw NumericalError(
          "within-cycle hazard table disagrees with the exact cycle hazard: " +
          std::to_string(got) + " vs " + std::to_string(m.cycle_hazard));
    if (got > 0.0) {
      const double scale = m.cycle_hazard / got;
      for (double& L : m.Ls) L *= scale;
    }
  }
  return m;
}

double HazardModel::hazard(double t) const {
  return profile.params.c * profile.evaluate(t);
}

double HazardModel::cumulative_hazard_closed_form(double t) const {
  const ClockParams& p = profile.params;
  switch (profile.kind) {
    case ProfileKind::baseline_constant:
      return p.c * profile.constant * t;
    case ProfileKind::general_zero_TC:
      return (p.c * profile.amplitude() / p.g) *
             sin_power_antiderivative(p.d - 1, p.g * t);
    default:
      throw WrongVariantError(
          "closed-form cumulative hazard exists only for the zero-temperature "
          "and baseline profiles");
  }
}

double HazardModel::cumulative_hazard_quadrature(double t) const {
  const ClockParams& p = profile.params;
  const double x_total = p.g * t;
  double q = std::floor(x_total / kPi);
  double x = x_total - q * kPi;
  if (x < 0.0) x = 0.0;
  if (x > kPi) {
    q += 1.0;
    x = 0.0;
  }
  double within = 0.0;
  if (x > 0.0)
    within = (p.c / p.g) *
             integrate([this](double u) { return profile.evaluate_phase(u); }, 0.0, x,
                       1e-10);
  return q * cycle_hazard + within;
}

double HazardModel::cumulative_hazard(double t) const {
  switch (profile.kind) {
    case ProfileKind::baseline_constant:
    case ProfileKind::general_zero_TC:
      return cumulative_hazard_closed_form(t);
    default:
      break;
  }
  return cumulative_hazard_table(t);
}

double HazardModel::cumulative_hazard_table(double t) const {
  const ClockParams& p = profile.params;
  const double x_total = p.g * t;
  double q = std::floor(x_total / kPi);
  double x = x_total - q * kPi;
  if (x < 0.0) x = 0.0;
  if (x > kPi) {
    q += 1.0;
    x = 0.0;
  }
  const double h = kPi / kTableIntervals;
  std::size_t j = std::size_t(x / h);
  if (j > std::size_t(kTableIntervals - 1)) j = kTableIntervals - 1;
  double seg = 0.0;
  if (x - xs[j] > 0.0) {
    const double rel_seg = std::max(1e-10, profile_noise_floor(p));
    const double floor_seg =
        std::max(1e-300, 1e-13 * cycle_hazard * p.g / p.c);
    seg = (p.c / p.g) *
          integrate([this](double u) { return profile.evaluate_phase(u); }, xs[j], x,
                    rel_seg, floor_seg, 1);
  }
  return q * cycle_hazard + Ls[j] + seg;
}

double HazardModel::tick_density(double t) const {
  return hazard(t) * std::exp(-cumulative_hazard(t));
}

TickMoments moments(const HazardModel& model) {
  const ClockParams& p = model.profile.params;
  const double lam = model.cycle_hazard;
  if (!(lam >= kDegenerateCycleHazard))
    throw DegenerateProfileError(
        "cycle hazard is numerically zero (" + std::to_string(lam) +
        "): R -> 0 and N is undefined");

  const double r = std::exp(-lam);
  if (r >= 1.0) throw NumericalError("per-cycle survival r >= 1");
  const double one_minus_r = -std::expm1(-lam);
  const double S0 = 1.0 / one_minus_r;
  const double S1 = r / (one_minus_r * one_minus_r);
  const double S2 = r * (1.0 + r) / (one_minus_r * one_minus_r * one_minus_r);

  // J_j = integral over one phase cycle of x^j * hazard * survival. The
  // zero-T closed-form cumulative hazard sums d-1 oscillatory terms per
  // call; past a few hundred levels the checkpoint table is both faster
  // and no less accurate than the closed form's own noise floor.
  const double g = p.g;
  const bool table_L =
      model.profile.kind == ProfileKind::general_zero_TC && p.d > 512;
  std::vector<double> J = integrate_vec(
      [&model, g, table_L](double x, double* out) {
        const double rate = model.profile.params.c * model.profile.evaluate_phase(x);
        const double L = table_L ? model.cumulative_hazard_table(x / g)
                                 : model.cumulative_hazard(x / g);
        const double core = rate * std::exp(-L);
        out[0] = core;
        out[1] = x * core;
        out[2] = x * x * core;
      },
      3, 0.0, kPi, 1e-10);

  const double I0 = S0 * J[0] / g;
  if (std::abs(I0 - 1.0) > 1e-7)
    throw NumericalError("tick-density mass " + std::to_string(I0) +
                         " deviates from 1: within-cycle quadrature untrusted");

  const double I1 = (kPi * S1 * J[0] + S0 * J[1]) / (g * g);
  const double I2 =
      (kPi * kPi * S2 * J[0] + 2.0 * kPi * S1 * J[1] + S0 * J[2]) / (g * g * g);

  double var = I2 - I1 * I1;
  if (var < -1e-12 * I1 * I1)
    throw NumericalError("negative tick-time variance " + std::to_string(var));
  if (var < 0.0) var = 0.0;

  TickMoments out;
  out.t_bar = I1;
  out.t2_bar = I2;
  out.delta_t = std::sqrt(var);
  out.N = (out.t_bar / out.delta_t) * (out.t_bar / out.delta_t);
  out.R = 1.0 / out.t_bar;
  out.epsilon = (p.d - 1) * p.E_C * out.R;
  out.cycle_hazard = lam;
  out.precision_warning = lam < kPrecisionWarnCycleHazard;
  return out;
}

TickMoments clock_metrics(const ClockParams& params) {
  params.validate();
  return moments(build_hazard_model(general_profile(params)));
}

TickMoments baseline_metrics(const ClockParams& params) {
  params.validate();
  const TopLevelProfile prof = baseline_profile(params);
  const double rate = params.c * prof.constant;
  TickMoments out;
  out.R = rate;
  out.t_bar = 1.0 / rate;
  out.t2_bar = 2.0 * out.t_bar * out.t_bar;  // exponential second moment
  out.delta_t = out.t_bar;
  out.N = 1.0;
  out.epsilon = (params.d - 1) * params.E_C * rate;
  out.cycle_hazard = rate * kPi / params.g;
  out.precision_warning = false;
  return out;
}

}  // namespace qclock
