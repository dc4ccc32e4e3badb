#pragma once

#include <cmath>
#include <cstdint>

#include "qclock/errors.hpp"

namespace qclock {

// log C(n, k). Computed through lgamma so n in the hundreds stays exact to
// a few ulp of the log; exp() of it is then good to ~1e-13 relative.
inline double lchoose(int n, int k) {
  if (k < 0 || n < 0 || k > n) throw ValidationError("lchoose: need 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
         std::lgamma(double(n - k) + 1.0);
}

// x^n for integer n >= 0 by binary exponentiation. ipow(0, 0) == 1.
inline double ipow(double x, int n) {
  double r = 1.0;
  double b = x;
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

// Compensated accumulator. Neumaier's variant: also correct when the
// running sum is smaller than the addend.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      comp += (sum - t) + x;
    } else {
      comp += (x - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Exact value of the full-cycle trigonometric moment
//   integral_0^pi cos^{2a}(x) sin^{2b}(x) dx = Gamma(a+1/2) Gamma(b+1/2) / Gamma(a+b+1),
// the Wallis/Beta closed form. a = b = 0 gives pi.
inline double trig_power_integral_pi(int a, int b) {
  if (a < 0 || b < 0) throw ValidationError("trig_power_integral_pi: negative exponent");
  return std::exp(std::lgamma(a + 0.5) + std::lgamma(b + 0.5) -
                  std::lgamma(double(a) + double(b) + 1.0));
}

}  // namespace qclock
