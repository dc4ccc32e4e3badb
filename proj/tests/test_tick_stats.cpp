#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "qclock/errors.hpp"
#include "qclock/params.hpp"
#include "qclock/profile.hpp"
#include "qclock/quadrature.hpp"
#include "qclock/tick_stats.hpp"
#include "support.hpp"

using namespace qclock;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

ClockParams make_params(int d, MachineCount M, double c, double g,
                        double beta_C = kInf, double beta_H = 0.0) {
  ClockParams p;
  p.d = d;
  p.M = M;
  p.c = c;
  p.g = g;
  p.beta_C = beta_C;
  p.beta_H = beta_H;
  p.E_C = 1.0;
  p.E_H = 2.0;
  return p;
}
}  // namespace

TEST_CASE("sin power antiderivative") {
  // n = 0 integrates 1; n = 1 is the textbook x/2 - sin(2x)/4.
  CHECK(sin_power_antiderivative(0, 1.7) == 1.7);
  for (double x : {0.0, 0.4, 1.9, kPi, 5.0})
    CHECK(sin_power_antiderivative(1, x) ==
          doctest::Approx(x / 2.0 - std::sin(2.0 * x) / 4.0).epsilon(1e-14));

  // Adaptive quadrature as the independent route, including x beyond one
  // cycle (the closed form needs no cycle splitting).
  for (int n : {2, 5, 50, 199}) {
    for (double x : {0.3, 1.2, kPi / 2.0, 3.0, 7.5}) {
      const double numeric =
          integrate([n](double u) { return ipow(std::sin(u), 2 * n); }, 0.0, x, 1e-12);
      CHECK(sin_power_antiderivative(n, x) ==
            doctest::Approx(numeric).epsilon(1e-10));
    }
  }

  CHECK_THROWS_AS(sin_power_antiderivative(-1, 1.0), ValidationError);
}

TEST_CASE("hazard model construction") {
  // d = 2, M = inf, T_C = 0: hazard c sin^2, cycle hazard c pi / (2g).
  ClockParams p = make_params(2, MachineCount::infinite(), 25.0, 1.0);
  HazardModel hm = build_hazard_model(general_profile(p));
  CHECK(hm.cycle_hazard == doctest::Approx(25.0 * kPi / 2.0).epsilon(1e-14));
  CHECK(hm.Ls.back() == hm.cycle_hazard);  // table is rescaled to land exactly
  CHECK(hm.xs.size() == 1025);

  CHECK(hm.hazard(0.0) == 0.0);
  CHECK(hm.hazard(kPi / 2.0) == doctest::Approx(25.0).epsilon(1e-14));

  // Table is nondecreasing with nonnegative slopes.
  for (std::size_t i = 1; i < hm.Ls.size(); ++i) {
    CHECK(hm.Ls[i] >= hm.Ls[i - 1]);
    CHECK(hm.dLs[i] >= 0.0);
  }

  // Baseline: constant hazard c * p0.
  ClockParams b = make_params(3, MachineCount::finite(1), 10.0, 1.0, 2.0, 0.5);
  HazardModel bh = build_hazard_model(baseline_profile(b));
  const double p0 = baseline_profile(b).constant;
  for (double t : {0.0, 0.7, 3.0}) CHECK(bh.hazard(t) == 10.0 * p0);
  CHECK(bh.cycle_hazard == doctest::Approx(10.0 * p0 * kPi).epsilon(1e-13));
}

TEST_CASE("cumulative hazard routes agree") {
  // Zero at t = 0 for every kind.
  for (ClockParams p : {make_params(2, MachineCount::infinite(), 25.0, 1.0),
                        make_params(5, MachineCount::finite(3), 7.0, 2.0, 1.5, 0.2)}) {
    HazardModel hm = build_hazard_model(general_profile(p));
    CHECK(hm.cumulative_hazard(0.0) == 0.0);
    CHECK(hm.cumulative_hazard_quadrature(0.0) == 0.0);
  }

  // d = 2, T_C = 0, M = inf at one full cycle.
  ClockParams p2 = make_params(2, MachineCount::infinite(), 25.0, 1.0);
  HazardModel h2 = build_hazard_model(general_profile(p2));
  CHECK(h2.cumulative_hazard(kPi) == doctest::Approx(25.0 * kPi / 2.0).epsilon(1e-13));

  // Wiener closed form vs adaptive quadrature, d = 4, M = 3, T_C = 0.
  ClockParams p4 = make_params(4, MachineCount::finite(3), 25.0, 1.0);
  HazardModel h4 = build_hazard_model(general_profile(p4));
  for (double t : {0.3, 1.0, 2.3, 4.0, 11.8}) {
    const double closed = h4.cumulative_hazard_closed_form(t);
    const double quad = h4.cumulative_hazard_quadrature(t);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
    CHECK(h4.cumulative_hazard(t) == closed);  // dispatch picks the closed form
  }

  // Finite-T dispatch (table + short quadrature) vs the from-scratch route.
  ClockParams pf = make_params(6, MachineCount::finite(2), 12.0, 0.7, 2.0, 0.3);
  HazardModel hf = build_hazard_model(general_profile(pf));
  for (double t : {0.05, 0.61, 2.0, 4.487, 9.0, 31.4}) {
    CHECK(hf.cumulative_hazard(t) ==
          doctest::Approx(hf.cumulative_hazard_quadrature(t)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(hf.cumulative_hazard_closed_form(1.0), WrongVariantError);

  // Cycle additivity and monotonicity.
  const double lam = hf.cycle_hazard;
  for (int q : {1, 2, 7}) {
    for (double th : {0.2, 1.1, 2.9}) {
      const double whole = hf.cumulative_hazard((q * kPi + th) / pf.g);
      const double part = hf.cumulative_hazard(th / pf.g);
      CHECK(whole == doctest::Approx(q * lam + part).epsilon(1e-12));
    }
  }
  double prev = -1.0;
  for (int i = 0; i <= 300; ++i) {
    const double v = hf.cumulative_hazard(12.0 * i / 300.0);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("tick density") {
  // Baseline: exact exponential density.
  ClockParams b = make_params(2, MachineCount::finite(1), 10.0, 1.0, 2.0, 0.5);
  HazardModel bh = build_hazard_model(baseline_profile(b));
  const double lam = 10.0 * baseline_profile(b).constant;
  for (double t : {0.0, 0.3, 1.0, 2.5})
    CHECK(bh.tick_density(t) == doctest::Approx(lam * std::exp(-lam * t)).epsilon(1e-13));

  // Normalization over [0, infinity) for assorted parameter sets.
  for (ClockParams p : {make_params(2, MachineCount::infinite(), 3.0, 1.0),
                        make_params(4, MachineCount::finite(2), 5.0, 1.3),
                        make_params(3, MachineCount::finite(1), 8.0, 0.9, 1.0, 0.2)}) {
    HazardModel hm = build_hazard_model(general_profile(p));
    test::DirectMoments dm = test::direct_moments(hm);
    CHECK(dm.I0 == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("moments: baseline is exponential") {
  ClockParams b = make_params(3, MachineCount::finite(1), 10.0, 1.0, 2.0, 0.5);

  // Numeric cycle-decomposition route on the constant profile.
  TickMoments m = moments(build_hazard_model(baseline_profile(b)));
  const double rate = 10.0 * baseline_profile(b).constant;
  CHECK(m.t_bar == doctest::Approx(1.0 / rate).epsilon(1e-9));
  CHECK(m.t2_bar == doctest::Approx(2.0 / (rate * rate)).epsilon(1e-8));
  CHECK(m.delta_t == doctest::Approx(1.0 / rate).epsilon(1e-7));
  CHECK(m.N == doctest::Approx(1.0).epsilon(1e-7));

  // Closed-form front end.
  TickMoments cb = baseline_metrics(b);
  CHECK(cb.N == 1.0);
  CHECK(cb.R == doctest::Approx(rate).epsilon(1e-15));
  CHECK(cb.delta_t == cb.t_bar);
  CHECK(cb.t2_bar == 2.0 * cb.t_bar * cb.t_bar);

  // beta_H = 0, d = 2: R = c/2 exactly.
  ClockParams u = make_params(2, MachineCount::finite(1), 10.0, 1.0, 2.0, 0.0);
  CHECK(baseline_metrics(u).R == doctest::Approx(5.0).epsilon(1e-15));

  // beta_H E_L = 1, d = 3: R = c e^{-2} / (1 + e^{-1} + e^{-2}).
  ClockParams w = make_params(3, MachineCount::finite(1), 10.0, 1.0, 3.0, 1.0);
  REQUIRE(w.beta_H * w.E_L() == 1.0);
  const double e1 = std::exp(-1.0), e2 = std::exp(-2.0);
  CHECK(baseline_metrics(w).R ==
        doctest::Approx(10.0 * e2 / (1.0 + e1 + e2)).epsilon(1e-14));
}

TEST_CASE("moments vs direct quadrature") {
  // d = 2, M = inf, T_C = 0 (the analytically cleanest case) and a finite-T
  // case; the acceptance suite runs the random grid.
  for (ClockParams p : {make_params(2, MachineCount::infinite(), 25.0, 1.0),
                        make_params(10, MachineCount::finite(5), 25.0, 1.0),
                        make_params(4, MachineCount::finite(3), 9.0, 1.1, 1.2, 0.4)}) {
    HazardModel hm = build_hazard_model(general_profile(p));
    TickMoments m = moments(hm);
    test::DirectMoments dm = test::direct_moments(hm);
    CHECK(m.t_bar == doctest::Approx(dm.I1).epsilon(1e-6));
    CHECK(m.t2_bar == doctest::Approx(dm.I2).epsilon(1e-6));
  }
}

TEST_CASE("clock metrics") {
  // Accuracy grows with d in the strong-decay zero-T regime.
  ClockParams d2 = make_params(2, MachineCount::infinite(), 1e3, 1.0);
  ClockParams d3 = make_params(3, MachineCount::infinite(), 1e3, 1.0);
  TickMoments m2 = clock_metrics(d2);
  TickMoments m3 = clock_metrics(d3);
  CHECK(m3.N > m2.N);

  // Definitional identities, bit-exact by construction.
  CHECK(m3.epsilon == (d3.d - 1) * d3.E_C * m3.R);
  CHECK(m3.R == 1.0 / m3.t_bar);

  // (g, c) -> (kg, kc) rescales times by 1/k and leaves N alone.
  ClockParams base = make_params(5, MachineCount::finite(4), 50.0, 1.0, 2.5, 0.3);
  TickMoments mb = clock_metrics(base);
  for (double k : {2.0, 10.0, 0.25}) {
    ClockParams scaled = base;
    scaled.g *= k;
    scaled.c *= k;
    TickMoments ms = clock_metrics(scaled);
    CHECK(ms.t_bar == doctest::Approx(mb.t_bar / k).epsilon(1e-10));
    CHECK(ms.delta_t == doctest::Approx(mb.delta_t / k).epsilon(1e-10));
    CHECK(ms.N == doctest::Approx(mb.N).epsilon(1e-10));
  }
}

TEST_CASE("degenerate and near-degenerate profiles") {
  // Finite M at T_C = 0 with large d: the sine amplitude is
  // 1 - (1 - 2^{1-d})^M ~ M 2^{1-d}, driving the cycle hazard under the
  // degeneracy floor around d ~ 50 at c = g = 1.
  ClockParams dead = make_params(50, MachineCount::finite(1), 1.0, 1.0);
  HazardModel hm_dead = build_hazard_model(general_profile(dead));
  CHECK(hm_dead.cycle_hazard < 1e-14);
  CHECK_THROWS_AS(moments(hm_dead), DegenerateProfileError);
  CHECK_THROWS_AS(clock_metrics(dead), DegenerateProfileError);

  // d = 42 sits between the warning band and the hard floor.
  ClockParams faint = make_params(42, MachineCount::finite(1), 1.0, 1.0);
  HazardModel hm_faint = build_hazard_model(general_profile(faint));
  REQUIRE(hm_faint.cycle_hazard >= 1e-14);
  REQUIRE(hm_faint.cycle_hazard < 1e-12);
  TickMoments mf = moments(hm_faint);
  CHECK(mf.precision_warning);
  CHECK(mf.N > 0.0);

  // Healthy hazard carries no warning.
  CHECK_FALSE(clock_metrics(make_params(2, MachineCount::infinite(), 25.0, 1.0))
                  .precision_warning);
}
