#include "qclock/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "qclock/errors.hpp"
#include "qclock/special.hpp"

namespace qclock {
namespace {

// 15-point Kronrod abscissae on [-1, 1] (positive half) and weights, with
// the embedded 7-point Gauss weights on the odd-indexed nodes. These are
// the classic QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a = 0.0;
  double b = 0.0;
  std::array<double, kQuadMaxComponents> integral{};
  std::array<double, kQuadMaxComponents> error{};
  double worst = 0.0;  // max over components of error[i]
};

Segment evaluate_segment(const VecFn& f, int m, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<double, kQuadMaxComponents> fc{};
  f(center, fc.data());

  std::array<double, kQuadMaxComponents> k15{};
  std::array<double, kQuadMaxComponents> g7{};
  for (int i = 0; i < m; ++i) {
    k15[i] = kWgk[7] * fc[i];
    g7[i] = kWg[3] * fc[i];
  }
  std::array<double, kQuadMaxComponents> lo{};
  std::array<double, kQuadMaxComponents> hi{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f(center - dx, lo.data());
    f(center + dx, hi.data());
    for (int i = 0; i < m; ++i) {
      const double pair = lo[i] + hi[i];
      k15[i] += kWgk[j] * pair;
      if (j & 1) g7[i] += kWg[j / 2] * pair;  // Gauss nodes are x1,x3,x5
    }
  }

  Segment s;
  s.a = a;
  s.b = b;
  for (int i = 0; i < m; ++i) {
    s.integral[i] = k15[i] * half;
    s.error[i] = std::abs((k15[i] - g7[i]) * half);
    s.worst = std::max(s.worst, s.error[i]);
  }
  return s;
}

}  // namespace

GK15Result gk15(const VecFn& f, int m, double a, double b) {
  if (m < 1 || m > kQuadMaxComponents)
    throw ValidationError("gk15: component count out of range");
  Segment s = evaluate_segment(f, m, a, b);
  GK15Result r;
  r.integral = s.integral;
  r.error = s.error;
  return r;
}

std::vector<double> integrate_vec(const VecFn& f, int m, double a, double b,
                                  double rel_tol, double abs_floor,
                                  int initial_panels, int max_segments) {
  if (m < 1 || m > kQuadMaxComponents)
    throw ValidationError("integrate_vec: component count out of range");
  if (!(b >= a)) throw ValidationError("integrate_vec: inverted interval");
  if (a == b) return std::vector<double>(std::size_t(m), 0.0);
  initial_panels = std::max(1, initial_panels);

  auto by_worst = [](const Segment& x, const Segment& y) { return x.worst < y.worst; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(by_worst)> queue(by_worst);

  const double width = (b - a) / initial_panels;
  for (int p = 0; p < initial_panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == initial_panels) ? b : a + (p + 1) * width;
    queue.push(evaluate_segment(f, m, lo, hi));
  }

  auto converged = [&]() {
    // Totals are recomputed from scratch; the queue stays small (tens to a
    // few thousand segments) and the O(segments) sweep keeps the
    // convergence test exact as segments are replaced.
    std::vector<Segment> all;
    all.reserve(queue.size());
    {
      auto copy = queue;
      while (!copy.empty()) {
        all.push_back(copy.top());
        copy.pop();
      }
    }
    for (int i = 0; i < m; ++i) {
      KahanSum total, err;
      for (const Segment& s : all) {
        total.add(s.integral[i]);
        err.add(s.error[i]);
      }
      if (err.value() > std::max(rel_tol * std::abs(total.value()), abs_floor))
        return false;
    }
    return true;
  };

  // Cheap running error bound so the exact convergence sweep runs rarely.
  std::array<KahanSum, kQuadMaxComponents> run_int{};
  std::array<KahanSum, kQuadMaxComponents> run_err{};
  {
    auto copy = queue;
    while (!copy.empty()) {
      const Segment& s = copy.top();
      for (int i = 0; i < m; ++i) {
        run_int[i].add(s.integral[i]);
        run_err[i].add(s.error[i]);
      }
      copy.pop();
    }
  }
  auto roughly_converged = [&]() {
    for (int i = 0; i < m; ++i) {
      if (run_err[i].value() >
          std::max(rel_tol * std::abs(run_int[i].value()), abs_floor))
        return false;
    }
    return true;
  };

  // Refine until the cheap running bound holds, then confirm with the exact
  // sweep (the running compensated sums can drift a few ulp after many
  // add/remove cycles); on a failed confirmation keep refining.
  while (!(roughly_converged() && converged())) {
    if (int(queue.size()) >= max_segments)
      throw NumericalError("integrate_vec: failed to reach tolerance within segment budget");
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(worst.a < mid && mid < worst.b))
      throw NumericalError("integrate_vec: tolerance unreachable at machine resolution");
    queue.pop();
    Segment left = evaluate_segment(f, m, worst.a, mid);
    Segment right = evaluate_segment(f, m, mid, worst.b);
    for (int i = 0; i < m; ++i) {
      run_int[i].add(-worst.integral[i]);
      run_err[i].add(-worst.error[i]);
      run_int[i].add(left.integral[i]);
      run_err[i].add(left.error[i]);
      run_int[i].add(right.integral[i]);
      run_err[i].add(right.error[i]);
    }
    queue.push(left);
    queue.push(right);
  }

  // Final totals from the surviving segments, compensated.
  std::vector<double> out(std::size_t(m), 0.0);
  std::array<KahanSum, kQuadMaxComponents> total{};
  while (!queue.empty()) {
    const Segment& s = queue.top();
    for (int i = 0; i < m; ++i) total[i].add(s.integral[i]);
    queue.pop();
  }
  for (int i = 0; i < m; ++i) out[std::size_t(i)] = total[i].value();
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, double abs_floor, int initial_panels,
                 int max_segments) {
  VecFn wrap = [&f](double x, double* out) { out[0] = f(x); };
  return integrate_vec(wrap, 1, a, b, rel_tol, abs_floor, initial_panels,
                       max_segments)[0];
}

}  // namespace qclock
