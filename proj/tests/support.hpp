#pragma once

// Shared test utilities: a brute-force moment reference that is independent
// of the cycle-decomposition assembly under test, and a Kolmogorov-Smirnov
// distance for exponential draws.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"
#include "qclock/tick_stats.hpp"

namespace qclock::test {

struct DirectMoments {
  double I0 = 0.0, I1 = 0.0, I2 = 0.0;
};

// Integrates t^j * tick_density(t) cycle by cycle out to survival
// ~ e^{-lambda_stop}; the truncated tail contributes relative error
// ~ e^{-lambda_stop} * poly, negligible against the 1e-6 comparisons this
// backs. No geometric sums anywhere: a genuinely different algorithm from
// moments().
inline DirectMoments direct_moments(const HazardModel& hm,
                                    double lambda_stop = 30.0) {
  const double g = hm.profile.params.g;
  const double pi = std::numbers::pi;
  const std::size_t cycles =
      std::size_t(std::ceil(lambda_stop / hm.cycle_hazard)) + 1;
  KahanSum i0, i1, i2;
  for (std::size_t q = 0; q < cycles; ++q) {
    const double a = double(q) * pi / g;
    const double b = double(q + 1) * pi / g;
    std::vector<double> J = integrate_vec(
        [&hm](double t, double* out) {
          const double f = hm.tick_density(t);
          out[0] = f;
          out[1] = t * f;
          out[2] = t * t * f;
        },
        3, a, b, 1e-10, 1e-300, 8);
    i0.add(J[0]);
    i1.add(J[1]);
    i2.add(J[2]);
  }
  return {i0.value(), i1.value(), i2.value()};
}

// Two-sided KS distance of draws against the unit-exponential CDF.
// 1% critical value for large n: 1.628 / sqrt(n).
inline double ks_exponential(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  const double n = double(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double F = -std::expm1(-u[i]);
    d = std::max(d, std::max(double(i + 1) / n - F, F - double(i) / n));
  }
  return d;
}

}  // namespace qclock::test
