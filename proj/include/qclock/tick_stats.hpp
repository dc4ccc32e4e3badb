#pragma once

#include <vector>

#include "qclock/params.hpp"
#include "qclock/profile.hpp"

namespace qclock {

// Exact antiderivative of sin^{2n}: the power-reduction closed form
//   integral_0^x sin^{2n}(u) du
//     = 4^{-n} [ C(2n,n) x + sum_{p=1..n} ((-1)^p / p) C(2n,n-p) sin(2px) ],
// valid for all x >= 0 (no cycle splitting needed). Binomials go through
// lchoose so n in the hundreds neither overflows nor loses the 4^{-n} scale.
double sin_power_antiderivative(int n, double x);

// Inhomogeneous Poisson description of the tick process. The hazard is
// c * P_top(t); one phase cycle spans gt in [0, pi]. Built once, immutable
// afterwards, safe for concurrent reads.
struct HazardModel {
  TopLevelProfile profile;

  // Hazard integrated over one full cycle, from the exact coefficient sum
  // (c/g) * [constant * pi + sum_k w_k * trig_power_integral_pi(a_k, b_k)].
  double cycle_hazard = 0.0;

  // Within-cycle checkpoint table: Ls[i] is the cumulative hazard at phase
  // xs[i] (1024 uniform intervals on [0, pi]), dLs[i] the phase derivative
  // (c/g) P(xs[i]). Ls is rescaled so Ls.back() == cycle_hazard exactly,
  // which keeps the assembled cumulative hazard monotone across cycle
  // boundaries.
  std::vector<double> xs, Ls, dLs;

  double hazard(double t) const;  // c * P_top(t)

  // Cumulative hazard, dispatching on profile kind: the zero-T and baseline
  // profiles use their exact closed forms; finite-T profiles use
  // q * cycle_hazard + (checkpoint + short adaptive quadrature).
  double cumulative_hazard(double t) const;

  // Exact closed form; defined only for the zero-T (Wallis antiderivative)
  // and baseline (linear) profiles. Throws WrongVariantError otherwise.
  double cumulative_hazard_closed_form(double t) const;

  // Pure-quadrature route for any kind: q * cycle_hazard plus a fresh
  // adaptive integration of the within-cycle remainder from phase 0.
  // Kept public so tests can confront it with the closed forms.
  double cumulative_hazard_quadrature(double t) const;

  // Checkpoint-table route for any kind: q * cycle_hazard + Ls[j] + a short
  // adaptive integration from the nearest checkpoint. O(1) in d per call,
  // unlike the zero-T closed form whose term count grows with d.
  double cumulative_hazard_table(double t) const;

  double tick_density(double t) const;  // hazard(t) * exp(-cumulative_hazard(t))
};

HazardModel build_hazard_model(const TopLevelProfile& profile);

struct TickMoments {
  double t_bar = 0.0;          // mean tick time (first moment)
  double t2_bar = 0.0;         // second moment
  double delta_t = 0.0;        // standard deviation of the tick time
  double N = 0.0;              // accuracy (t_bar / delta_t)^2
  double R = 0.0;              // resolution 1 / t_bar
  double epsilon = 0.0;        // dissipation rate (d-1) E_C R
  double cycle_hazard = 0.0;
  // 1 - exp(-cycle_hazard) has lost two or more significant digits; N and
  // delta_t are still returned but carry amplified roundoff.
  bool precision_warning = false;
};

// First and second tick-time moments via the cycle decomposition: with
// r = exp(-cycle_hazard) and S_k = sum_q q^k r^q in closed form,
//   I_1 = (pi S_1 J_0 + S_0 J_1) / g^2,
//   I_2 = (pi^2 S_2 J_0 + 2 pi S_1 J_1 + S_0 J_2) / g^3,
// where J_j = integral_0^pi x^j (c P)(x) e^{-L(x)} dx over one phase cycle.
// The identity S_0 J_0 / g == 1 (total tick-density mass) is recomputed and
// enforced to 1e-7 as a self-check on the quadrature.
TickMoments moments(const HazardModel& model);

// validate -> profile -> hazard model -> moments, for the driven clock.
TickMoments clock_metrics(const ClockParams& params);

// Single-bath reference clock: constant hazard, exponential ticks, N = 1
// by construction. Closed form throughout.
TickMoments baseline_metrics(const ClockParams& params);

}  // namespace qclock
