#pragma once

#include <array>
#include <functional>
#include <vector>

namespace qclock {

// Embedded Gauss(7)/Kronrod(15) evaluation of up to kMaxComponents
// simultaneous integrands sharing the same nodes. The error estimate per
// component is the plain |K15 - G7| difference, a conservative bound for
// smooth integrands.
inline constexpr int kQuadMaxComponents = 4;

struct GK15Result {
  std::array<double, kQuadMaxComponents> integral{};
  std::array<double, kQuadMaxComponents> error{};
};

// f(x, out) writes m components at x into out[0..m-1].
using VecFn = std::function<void(double, double*)>;

GK15Result gk15(const VecFn& f, int m, double a, double b);

// Globally adaptive quadrature on [a, b]: the interval is split into
// initial_panels segments, then the segment with the worst error is
// bisected until every component satisfies
//   total_error <= max(rel_tol * |total|, abs_floor).
// Throws NumericalError if max_segments is exhausted first.
std::vector<double> integrate_vec(const VecFn& f, int m, double a, double b,
                                  double rel_tol = 1e-10,
                                  double abs_floor = 1e-300,
                                  int initial_panels = 16,
                                  int max_segments = 30000);

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, double abs_floor = 1e-300,
                 int initial_panels = 16, int max_segments = 30000);

}  // namespace qclock
