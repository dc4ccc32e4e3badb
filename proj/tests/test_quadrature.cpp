#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qclock/errors.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/special.hpp"

using namespace qclock;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("lchoose") {
  CHECK(lchoose(5, 2) == doctest::Approx(std::log(10.0)).epsilon(1e-14));
  CHECK(lchoose(0, 0) == 0.0);
  CHECK(lchoose(9, 0) == 0.0);
  CHECK(lchoose(9, 9) == 0.0);
  CHECK(std::exp(lchoose(200, 100)) ==
        doctest::Approx(9.054851465610328e58).epsilon(1e-12));
  CHECK_THROWS_AS(lchoose(3, 4), ValidationError);
  CHECK_THROWS_AS(lchoose(-1, 0), ValidationError);
  CHECK_THROWS_AS(lchoose(3, -1), ValidationError);
}

TEST_CASE("ipow") {
  CHECK(ipow(2.0, 10) == 1024.0);
  CHECK(ipow(0.0, 0) == 1.0);
  CHECK(ipow(0.0, 5) == 0.0);
  CHECK(ipow(-2.0, 3) == -8.0);
  CHECK(ipow(0.5, 53) == std::pow(0.5, 53));  // exact in binary
  CHECK(ipow(1.5, 7) == doctest::Approx(std::pow(1.5, 7)).epsilon(1e-15));
}

TEST_CASE("compensated summation") {
  // 1 + 1e-16 * 1e4 fails in naive double accumulation, survives Kahan.
  KahanSum k;
  k.add(1.0);
  for (int i = 0; i < 10000; ++i) k.add(1e-16);
  CHECK(k.value() == doctest::Approx(1.0 + 1e-12).epsilon(1e-15));

  // Neumaier branch: big addend after small running sum.
  KahanSum n;
  n.add(1.0);
  n.add(1e100);
  n.add(1.0);
  n.add(-1e100);
  CHECK(n.value() == 2.0);
}

TEST_CASE("full-cycle trig moments") {
  CHECK(trig_power_integral_pi(0, 0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(trig_power_integral_pi(0, 1) == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(trig_power_integral_pi(1, 1) == doctest::Approx(kPi / 8.0).epsilon(1e-14));
  // Wallis: int sin^8 = 35 pi / 128.
  CHECK(trig_power_integral_pi(0, 4) ==
        doctest::Approx(35.0 * kPi / 128.0).epsilon(1e-13));
  CHECK_THROWS_AS(trig_power_integral_pi(-1, 0), ValidationError);

  // Agreement with adaptive quadrature for a grid of exponent pairs.
  for (int a : {0, 1, 3, 10}) {
    for (int b : {0, 2, 7, 25}) {
      const double numeric = integrate(
          [&](double x) { return ipow(std::cos(x), 2 * a) * ipow(std::sin(x), 2 * b); },
          0.0, kPi, 1e-12);
      CHECK(numeric == doctest::Approx(trig_power_integral_pi(a, b)).epsilon(1e-11));
    }
  }
}

TEST_CASE("single gauss-kronrod panel") {
  // K15 is exact for polynomials of degree <= 22; degree 10 with a wide
  // margin checks node/weight transcription.
  VecFn poly = [](double x, double* out) {
    out[0] = ((((x + 2.0) * x - 1.0) * x + 3.0) * x - 0.5) * x + 1.0;  // degree 5
    out[1] = ipow(x, 10);
  };
  GK15Result r = gk15(poly, 2, -1.0, 2.0);
  // Antiderivative of out[0]: x^6/6 + 2x^5/5 - x^4/4 + x^3 - x^2/4 + x.
  auto F = [](double x) {
    return ipow(x, 6) / 6.0 + 2.0 * ipow(x, 5) / 5.0 - ipow(x, 4) / 4.0 +
           ipow(x, 3) - x * x / 4.0 + x;
  };
  CHECK(r.integral[0] == doctest::Approx(F(2.0) - F(-1.0)).epsilon(1e-14));
  CHECK(r.integral[1] == doctest::Approx((ipow(2.0, 11) + 1.0) / 11.0).epsilon(1e-14));
  CHECK(r.error[0] < 1e-11);
  // The embedded G7 is exact through degree 13, so even the degree-10
  // component must report a tiny error estimate.
  CHECK(r.error[1] < 1e-10);
}

TEST_CASE("adaptive integration") {
  // Smooth transcendental with known value.
  CHECK(integrate([](double x) { return std::exp(-x) * std::sin(3.0 * x); }, 0.0, 5.0) ==
        doctest::Approx((3.0 - std::exp(-5.0) * (std::sin(15.0) * 1.0 +
                                                 3.0 * std::cos(15.0))) /
                        10.0)
            .epsilon(1e-10));

  // Narrow needle: width ~1e-3 off-center, caught by the initial panel split.
  const double needle = integrate(
      [](double x) {
        const double u = (x - 0.731) / 1e-3;
        return std::exp(-u * u);
      },
      0.0, 1.0, 1e-10);
  CHECK(needle == doctest::Approx(1e-3 * std::sqrt(kPi)).epsilon(1e-9));

  // Identically zero integrand terminates via the absolute floor.
  CHECK(integrate([](double) { return 0.0; }, 0.0, 1.0) == 0.0);

  // Vector variant: three components converge together. The cosine integral
  // is exactly zero, so it can only converge through the absolute floor.
  std::vector<double> v = integrate_vec(
      [](double x, double* out) {
        out[0] = 1.0;
        out[1] = x;
        out[2] = std::cos(x);
      },
      3, 0.0, kPi, 1e-12, 5e-13);
  CHECK(v[0] == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(v[1] == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-12));
  CHECK(std::abs(v[2]) < 1e-12);

  // Segment budget exhaustion reports failure instead of a wrong answer:
  // |x-1/3|^{-1/2} is integrable but unbounded, so the worst segment never
  // converges within a tiny budget.
  CHECK_THROWS_AS(integrate(
                      [](double x) { return 1.0 / std::sqrt(std::abs(x - 1.0 / 3.0)); },
                      0.0, 1.0, 1e-10, 1e-300, 16, 64),
                  NumericalError);
}

TEST_CASE("oscillatory integrand at moment tolerances") {
  // The moment pipeline integrates x^j * hazard * survival shapes; mimic the
  // worst oscillation the profile can produce (high harmonics from sin^{2n}).
  const double val = integrate(
      [](double x) { return ipow(std::sin(x), 40) * std::cos(20.0 * x); }, 0.0, kPi,
      1e-12);
  // Exact: integral_0^pi sin^40 x cos(20 2x/2)... use the Fourier route:
  // sin^{40} = 4^{-20} sum_p binom(40, 20-p) (-1)^p 2 cos(2 p x) (p>=1 terms)
  // so only the p = 10 term survives against cos(20x), giving
  // pi * 4^{-20} * C(40, 10).
  const double exact = kPi * std::pow(4.0, -20.0) * std::exp(lchoose(40, 10));
  CHECK(val == doctest::Approx(exact).epsilon(1e-10));
}
