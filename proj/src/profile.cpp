#include "qclock/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qclock/errors.hpp"
#include "qclock/special.hpp"

namespace qclock {
namespace {

constexpr double kPi = std::numbers::pi;

// log(Z - 1) without forming Z: Z_i - 1 = e^{-beta_i E_i} exactly.
struct GapLogs {
  double lH;  // log(Z_H - 1) = -beta_H E_H, always finite (beta_H finite)
  double lC;  // log(Z_C - 1) = -beta_C E_C, -inf at T_C = 0
};

GapLogs gap_logs(const ClockParams& p) {
  return {-p.beta_H * p.E_H, -p.beta_C * p.E_C};
}

// log of B = sum_{j=0}^{d-1} (Z_H-1)^j (Z_C-1)^{d-1-j} and of
// S = B / (Z_H Z_C)^{d-1}, both exact in the log domain. B <= d always
// (each factor is at most 1), but it underflows linear doubles for cold
// parameters at large d, hence the log form.
struct TransportLogs {
  double log_B;
  double log_S;
  // log[1 - (1-S)^M], i.e. the numerator of f. Zero for M = infinity.
  double log_num;
};

TransportLogs transport_logs(const ClockParams& p, const GapLogs& gl) {
  // Z_H == Z_C exactly iff beta_H E_H == beta_C E_C; comparing the logs
  // keeps the test meaningful where the linear Z's have rounded to 1.
  if (gl.lH == gl.lC)
    throw DegenerateGradientError(
        "hot and cold partition functions coincide (Z_H == Z_C): no population gradient");

  const int dm1 = p.d - 1;
  const double lmax = std::max(gl.lH, gl.lC);
  const double lmin = std::min(gl.lH, gl.lC);
  // B = e^{(d-1) lmax} sum_m rho^m with rho = e^{lmin - lmax} in [0, 1).
  const double rho = std::exp(lmin - lmax);
  KahanSum geo;
  double rho_m = 1.0;
  for (int m = 0; m <= dm1; ++m) {
    geo.add(rho_m);
    rho_m *= rho;
  }
  TransportLogs tl;
  tl.log_B = dm1 * lmax + std::log(geo.value());
  const double ZH = 1.0 + std::exp(gl.lH);
  const double ZC = 1.0 + std::exp(gl.lC);
  tl.log_S = tl.log_B - dm1 * std::log(ZH * ZC);

  if (p.M.is_infinite()) {
    tl.log_num = 0.0;  // (1-S)^M -> 0 for any S > 0
  } else {
    const double S = std::exp(tl.log_S);
    // 1 - (1-S)^M through expm1/log1p: uniformly accurate from S near 1
    // down to M*S at the underflow edge.
    const double Md = double(p.M.value());
    tl.log_num = std::log(-std::expm1(Md * std::log1p(-S)));
  }
  return tl;
}

// log of ladder_pop[n] at beta_C without forming the (possibly
// underflowing) population itself.
struct LadderLogs {
  double x;          // beta_C * E_L, may be +inf
  double log_Z_L;
  double log_pop(int n) const { return -double(n) * x - log_Z_L; }
};

LadderLogs ladder_logs(const ClockParams& p) {
  LadderLogs ll;
  ll.x = p.beta_C * p.E_L();
  if (std::isinf(ll.x)) {
    ll.log_Z_L = 0.0;
    return ll;
  }
  KahanSum z;
  for (int n = 0; n < p.d; ++n) z.add(std::exp(-double(n) * ll.x));
  ll.log_Z_L = std::log(z.value());
  return ll;
}

void sort_terms(TopLevelProfile& prof) {
  std::sort(prof.terms.begin(), prof.terms.end(),
            [](const ProfileTerm& a, const ProfileTerm& b) {
              return a.cos_pow < b.cos_pow;
            });
}

}  // namespace

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::two_qubit: return "two_qubit";
    case ProfileKind::horizontal_finite_T: return "horizontal_finite_T";
    case ProfileKind::general_finite_T: return "general_finite_T";
    case ProfileKind::general_zero_TC: return "general_zero_TC";
    case ProfileKind::baseline_constant: return "baseline_constant";
  }
  return "unknown";
}

double TopLevelProfile::period() const { return kPi / params.g; }

double TopLevelProfile::amplitude() const {
  for (const ProfileTerm& t : terms)
    if (t.cos_pow == 0) return t.weight;
  return 0.0;
}

double TopLevelProfile::evaluate(double t) const {
  return evaluate_phase(params.g * t);
}

double TopLevelProfile::evaluate_phase(double x) const {
  const double s = std::sin(x);
  const double co = std::cos(x);
  const double s2 = s * s;
  const double c2 = co * co;
  KahanSum acc;
  acc.add(constant);
  for (const ProfileTerm& term : terms)
    acc.add(term.weight * ipow(c2, term.cos_pow / 2) * ipow(s2, term.sin_pow / 2));
  return acc.value();
}

TopLevelProfile two_qubit_profile(const ClockParams& p) {
  p.validate();
  if (p.d != 2 || !(p.M == MachineCount::finite(1)))
    throw WrongVariantError("two-qubit formula requires d = 2 and M = 1");

  const PartitionSet ps = ladder_partition(p);
  const double denom = ps.Z_C * ps.Z_H * ps.Z_L;

  TopLevelProfile prof;
  prof.params = p;
  prof.kind = ProfileKind::two_qubit;
  prof.terms.push_back({(ps.Z_H - 1.0) / denom, 0, 2});
  prof.terms.push_back({(ps.Z_C - 1.0) * (ps.Z_L - 1.0) / denom, 2, 0});
  prof.constant = (ps.Z_L - 1.0) / ps.Z_L *
                  (1.0 - (ps.Z_C - 1.0) / (ps.Z_C * ps.Z_H));
  sort_terms(prof);
  return prof;
}

double p_top_two_qubit(const ClockParams& p, double t) {
  return two_qubit_profile(p).evaluate(t);
}

TopLevelProfile horizontal_profile(const ClockParams& p) {
  p.validate();
  if (p.d != 2)
    throw WrongVariantError("horizontal-extension formula requires d = 2");

  const PartitionSet ps = ladder_partition(p);
  const double ZHZC = ps.Z_H * ps.Z_C;
  // Per machine pass, the excitation either stays put with probability
  // A = [1 + (Z_C-1)(Z_H-1)] / (Z_H Z_C) or is handed on; the pass chain
  // sums geometrically. 1 - A has the cancellation-free form below.
  const double one_minus_A = ((ps.Z_C - 1.0) + (ps.Z_H - 1.0)) / ZHZC;
  double A_pow_M;  // A^M
  double G_M;      // sum_{k=1}^{M} A^{k-1} = (1 - A^M) / (1 - A)
  if (p.M.is_infinite()) {
    A_pow_M = 0.0;
    G_M = 1.0 / one_minus_A;
  } else {
    const double Md = double(p.M.value());
    A_pow_M = std::exp(Md * std::log1p(-one_minus_A));
    G_M = -std::expm1(Md * std::log1p(-one_minus_A)) / one_minus_A;
  }
  const double p01 = (ps.Z_H - 1.0) / ZHZC;  // machine ready to push
  const double p10 = (ps.Z_C - 1.0) / ZHZC;  // machine ready to pull back

  TopLevelProfile prof;
  prof.params = p;
  prof.kind = ProfileKind::horizontal_finite_T;
  prof.terms.push_back({p01 * G_M / ps.Z_L, 0, 2});
  prof.terms.push_back({(ps.Z_L - 1.0) / ps.Z_L * p10 * G_M, 2, 0});
  prof.constant = (ps.Z_L - 1.0) / ps.Z_L * (A_pow_M + p01 * G_M);
  sort_terms(prof);
  return prof;
}

double p_top_horizontal_finite_T(const ClockParams& p, double t) {
  return horizontal_profile(p).evaluate(t);
}

double f_coefficient(const ClockParams& p) {
  p.validate();
  const GapLogs gl = gap_logs(p);
  const TransportLogs tl = transport_logs(p, gl);
  return std::exp(tl.log_num - tl.log_B);
}

double wigner_amp_sq(int d, int n, double gt) {
  if (d < 1) throw ValidationError("wigner_amp_sq: need d >= 1");
  if (n < 0 || n > d - 1)
    throw ValidationError("wigner_amp_sq: level index n out of [0, d-1]");
  const double s = std::sin(gt);
  const double co = std::cos(gt);
  const double s2 = s * s;
  const double c2 = co * co;
  const int b = d - 1 - n;
  // Zero bases with positive exponents must short-circuit: n log(0) is
  // -inf (fine alone) but would poison the sum if the other factor is 0^0.
  if ((n > 0 && c2 == 0.0) || (b > 0 && s2 == 0.0)) return 0.0;
  double lg = lchoose(d - 1, n);
  if (n > 0) lg += double(n) * std::log(c2);
  if (b > 0) lg += double(b) * std::log(s2);
  return std::exp(lg);
}

TopLevelProfile general_profile(const ClockParams& p) {
  p.validate();
  TopLevelProfile prof;
  prof.params = p;

  const GapLogs gl = gap_logs(p);
  const int dm1 = p.d - 1;

  if (std::isinf(p.beta_C)) {
    // Zero-temperature ladder: only the ground state is populated and the
    // profile collapses to a single sin^{2(d-1)} term with weight
    // 1 - [1 - ((Z_H-1)/Z_H)^{d-1}]^M.
    prof.kind = ProfileKind::general_zero_TC;
    const double log_ratio = gl.lH - std::log1p(std::exp(gl.lH));
    const double pow_d = std::exp(double(dm1) * log_ratio);
    double w0;
    if (p.M.is_infinite()) {
      w0 = 1.0;  // (1 - pow_d)^M -> 0 since pow_d > 0
    } else {
      w0 = -std::expm1(double(p.M.value()) * std::log1p(-pow_d));
    }
    prof.constant = 0.0;
    prof.terms.push_back({w0, 0, 2 * dm1});
    return prof;
  }

  prof.kind = ProfileKind::general_finite_T;
  const TransportLogs tl = transport_logs(p, gl);
  const LadderLogs ll = ladder_logs(p);

  // Level n feeds the top through d-1-n machine-driven steps:
  //   pop[n] (Z_C-1)^n (Z_H-1)^{d-1-n} f binom(d-1,n) cos^{2n} sin^{2(d-1-n)}.
  // Assembled in the log domain; every factor keeps its exact log.
  for (int n = 0; n <= dm1 - 1; ++n) {
    double lw = ll.log_pop(n) + lchoose(dm1, n) + tl.log_num - tl.log_B;
    if (n > 0) lw += double(n) * gl.lC;
    if (dm1 - n > 0) lw += double(dm1 - n) * gl.lH;
    prof.terms.push_back({std::exp(lw), 2 * n, 2 * (dm1 - n)});
  }
  // Top level: pop[d-1] [1 - (1 - cos^{2(d-1)}) (Z_C-1)^{d-1} f], split into
  // a constant and a pure cosine term. (Z_C-1)^{d-1} f <= 1 because B
  // contains (Z_C-1)^{d-1} as one of its (positive) summands.
  const double log_pop_top = ll.log_pop(dm1);
  const double log_leak = double(dm1) * gl.lC + tl.log_num - tl.log_B;
  prof.constant = std::exp(log_pop_top) * (1.0 - std::exp(log_leak));
  prof.terms.push_back({std::exp(log_pop_top + log_leak), 2 * dm1, 0});
  sort_terms(prof);
  return prof;
}

double p_top_general(const ClockParams& p, double t) {
  return general_profile(p).evaluate(t);
}

TopLevelProfile baseline_profile(const ClockParams& p) {
  p.validate();
  // Ladder in equilibrium with the hot bath; Z_L here is at beta_H, unlike
  // the beta_C ladder partition everywhere else.
  const double x = p.beta_H * p.E_L();
  KahanSum z;
  for (int n = 0; n < p.d; ++n) z.add(std::exp(-double(n) * x));
  TopLevelProfile prof;
  prof.params = p;
  prof.kind = ProfileKind::baseline_constant;
  prof.constant = std::exp(-double(p.d - 1) * x) / z.value();
  return prof;
}

double effective_coupling(const ClockParams& p) {
  return p.c * general_profile(p).amplitude();
}

}  // namespace qclock
