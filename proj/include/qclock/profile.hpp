#pragma once

#include <string>
#include <vector>

#include "qclock/params.hpp"

namespace qclock {

enum class ProfileKind {
  two_qubit,            // d = 2, M = 1, any temperatures
  horizontal_finite_T,  // d = 2, M machines, any temperatures
  general_finite_T,     // any d, M, finite beta_C
  general_zero_TC,      // any d, M, beta_C = infinity
  baseline_constant,    // no clockwork: thermal top population at beta_H
};

std::string to_string(ProfileKind kind);

// One even trigonometric monomial weight * cos^{cos_pow}(gt) sin^{sin_pow}(gt).
// All weights produced by the builders are nonnegative, so evaluation never
// cancels.
struct ProfileTerm {
  double weight = 0.0;
  int cos_pow = 0;
  int sin_pow = 0;
};

// Closed-form top-level occupation probability P_top(t): a constant plus a
// sum of even trig monomials in the phase x = g t. Period pi/g for every
// kind (only even powers appear).
struct TopLevelProfile {
  ClockParams params;
  ProfileKind kind = ProfileKind::general_zero_TC;
  double constant = 0.0;
  std::vector<ProfileTerm> terms;  // sorted by ascending cos_pow

  double period() const;
  // Weight of the pure sine term (cos_pow == 0): the peak of the sinusoidal
  // part, and C_M / c for the zero-temperature profile. 0 if absent.
  double amplitude() const;
  double evaluate(double t) const;        // P_top(t)
  double evaluate_phase(double x) const;  // same, x = g t
};

// Single two-qubit machine on a two-level ladder (d = 2, M = 1); throws
// WrongVariantError otherwise.
TopLevelProfile two_qubit_profile(const ClockParams& params);
double p_top_two_qubit(const ClockParams& params, double t);

// M parallel machines on one transition (d = 2). The geometric ladder of
// machine passes is summed in closed form; M = infinity is the limit of
// that sum. Throws WrongVariantError for d != 2.
TopLevelProfile horizontal_profile(const ClockParams& params);
double p_top_horizontal_finite_T(const ClockParams& params, double t);

// Full clockwork, any d and M. Selects the zero-temperature kind when
// beta_C is infinite. This is the profile every downstream computation
// consumes.
TopLevelProfile general_profile(const ClockParams& params);
double p_top_general(const ClockParams& params, double t);

// No clockwork at all: the ladder thermalizes with the hot bath, so the
// top-level population is the constant e^{-beta_H (d-1) E_L} / Z_L(beta_H).
TopLevelProfile baseline_profile(const ClockParams& params);

// Weight coefficient of the population transport chain:
//   f = [1 - (1 - S)^M] / B,
//   B = sum_{j=0}^{d-1} (Z_H-1)^j (Z_C-1)^{d-1-j},  S = B / (Z_H Z_C)^{d-1}.
// S lies in (0, 1); M = infinity gives f = 1/B. Throws
// DegenerateGradientError when Z_H == Z_C exactly.
double f_coefficient(const ClockParams& params);

// binom(d-1, n) cos^{2n}(gt) sin^{2(d-1-n)}(gt): the squared rotation
// matrix element taking the ladder from level n to the top under the
// in-phase machine drive. Log-domain, stable to d in the hundreds.
double wigner_amp_sq(int d, int n, double gt);

// c times the pure-sine weight of the general profile. At T_C = 0 this is
// the effective decay rate C_M = c {1 - [1 - ((Z_H-1)/Z_H)^{d-1}]^M}; at
// finite T_C the same definition is kept as a documented extension.
double effective_coupling(const ClockParams& params);

}  // namespace qclock
