#include "qclock/oracle.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <ostream>
#include <sstream>

#include "qclock/errors.hpp"

namespace qclock {

namespace {

constexpr int kMaxDim = 4096;

// Machine-column layout helpers. A column configuration is the base-4 word
// of its d-1 machine digits, transition j = 1 most significant.
struct Layout {
  int d;
  int M;
  int digits;                 // d - 1 per column
  std::uint64_t col_space;    // 4^digits
  std::uint64_t machine_dim;  // 4^(digits * M)

  int digit(std::uint64_t cfg, int j) const {  // j in 1..digits
    return int((cfg >> (2 * (digits - j))) & 3u);
  }

  // Column n-primed configuration: transitions 1..n fired (digit 2, cold
  // excited), transitions n+1..d-1 waiting (digit 1, hot excited).
  std::uint64_t primed(int n) const {
    std::uint64_t cfg = 0;
    for (int j = 1; j <= digits; ++j) cfg = cfg * 4 + (j <= n ? 2u : 1u);
    return cfg;
  }

  // Whether cfg equals primed(n) for some n: digits read 2...21...1.
  bool primed_any(std::uint64_t cfg) const {
    bool seen_one = false;
    for (int j = 1; j <= digits; ++j) {
      const int dg = digit(cfg, j);
      if (dg == 1) {
        seen_one = true;
      } else if (dg == 2) {
        if (seen_one) return false;
      } else {
        return false;
      }
    }
    return true;
  }

  std::uint64_t column(std::uint64_t idx, int k) const {  // k in 1..M
    const int shift = 2 * digits * (M - k);
    return (idx >> shift) & (col_space - 1);
  }

  std::uint64_t with_column(std::uint64_t idx, int k, std::uint64_t cfg) const {
    const int shift = 2 * digits * (M - k);
    const std::uint64_t mask = (col_space - 1) << shift;
    return (idx & ~mask) | (cfg << shift);
  }

  int ladder(std::uint64_t idx) const { return int(idx / machine_dim); }

  std::uint64_t with_ladder(std::uint64_t idx, int lad) const {
    return idx % machine_dim + std::uint64_t(lad) * machine_dim;
  }
};

Layout make_layout(const ClockParams& p) {
  Layout L;
  L.d = p.d;
  L.M = int(p.M.value());
  L.digits = p.d - 1;
  L.col_space = std::uint64_t(1) << (2 * L.digits);
  L.machine_dim = std::uint64_t(1) << (2 * L.digits * L.M);
  return L;
}

int checked_dim(const ClockParams& p) {
  p.validate();
  if (p.M.is_infinite())
    throw SizeError(
        "exact evolution needs a finite machine count; M = infinity has no "
        "finite Hilbert space");
  const double dim = oracle_dimension(p.d, p.M);
  if (dim > kMaxDim) {
    std::ostringstream os;
    os << "Hilbert dimension guardrail exceeded: (d=" << p.d
       << ", M=" << p.M.str() << ") requires dimension ";
    // Far past the guardrail the uint64 cast would overflow; fall back to
    // floating form there.
    if (dim <= 9e18)
      os << std::uint64_t(dim);
    else
      os << dim;
    os << " > " << kMaxDim;
    throw SizeError(os.str());
  }
  return int(dim);
}

// Adds column k's ladder-move term to H. The move fires transition
// n = lad+1 when column k is primed at lad and every later column is not
// primed at any level (the asymmetric conditioning that makes distinct
// column terms mutually exclusive).
void add_column_term(const ClockParams& p, const Layout& L, int k,
                     Eigen::MatrixXcd& H) {
  const std::uint64_t dim = std::uint64_t(p.d) * L.machine_dim;
  for (std::uint64_t b = 0; b < dim; ++b) {
    const int lad = L.ladder(b);
    if (lad == p.d - 1) continue;
    const int n = lad + 1;
    if (L.column(b, k) != L.primed(lad)) continue;
    bool later_clear = true;
    for (int k2 = k + 1; k2 <= L.M && later_clear; ++k2)
      if (L.primed_any(L.column(b, k2))) later_clear = false;
    if (!later_clear) continue;
    const std::uint64_t a =
        L.with_column(L.with_ladder(b, n), k, L.primed(n));
    const double mag = p.g * std::sqrt(double(n) * double(p.d - n));
    H(Eigen::Index(a), Eigen::Index(b)) += std::complex<double>(0.0, mag);
    H(Eigen::Index(b), Eigen::Index(a)) += std::complex<double>(0.0, -mag);
  }
}

}  // namespace

double oracle_dimension(int d, const MachineCount& M) {
  if (M.is_infinite()) return std::numeric_limits<double>::infinity();
  return double(d) * std::pow(4.0, double(M.value()) * double(d - 1));
}

Eigen::MatrixXcd oracle_h_k(const ClockParams& params, int k) {
  const int dim = checked_dim(params);
  const Layout L = make_layout(params);
  if (k < 1 || k > L.M) throw ValidationError("oracle_h_k: k out of range");
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(dim, dim);
  add_column_term(params, L, k, H);
  return H;
}

OracleSystem build_oracle(const ClockParams& params) {
  const int dim = checked_dim(params);
  const Layout L = make_layout(params);

  OracleSystem sys;
  sys.params = params;
  sys.dim = dim;
  sys.H_int = Eigen::MatrixXcd::Zero(dim, dim);
  for (int k = 1; k <= L.M; ++k) add_column_term(params, L, k, sys.H_int);

  sys.ladder_of.resize(dim);
  sys.basis_labels.resize(dim);
  sys.H0_diag.resize(dim);
  sys.init_weights.resize(dim);

  const PartitionSet parts = ladder_partition(params);
  const double E_L = params.E_L();
  // Per-qubit Gibbs factors; exp(-inf * E) = 0 handles T_C = 0 directly.
  const double cold_hi = std::exp(-params.beta_C * params.E_C) / parts.Z_C;
  const double cold_lo = 1.0 / parts.Z_C;
  const double hot_hi = std::exp(-params.beta_H * params.E_H) / parts.Z_H;
  const double hot_lo = 1.0 / parts.Z_H;

  for (std::uint64_t b = 0; b < std::uint64_t(dim); ++b) {
    const int lad = L.ladder(b);
    sys.ladder_of[b] = lad;

    double energy = lad * E_L;
    double weight = parts.ladder_pop[std::size_t(lad)];
    std::ostringstream label;
    label << "|" << lad;
    for (int k = 1; k <= L.M; ++k) {
      label << (k == 1 ? ";" : ",");
      const std::uint64_t cfg = L.column(b, k);
      for (int j = 1; j <= L.digits; ++j) {
        const int dg = L.digit(cfg, j);
        const int cold = dg >> 1, hot = dg & 1;
        energy += cold * params.E_C + hot * params.E_H;
        weight *= (cold ? cold_hi : cold_lo) * (hot ? hot_hi : hot_lo);
        label << dg;
      }
    }
    label << ">";
    sys.H0_diag[Eigen::Index(b)] = energy;
    sys.init_weights[Eigen::Index(b)] = weight;
    sys.basis_labels[b] = label.str();
  }
  return sys;
}

EvolutionResult evolve_p_top(const OracleSystem& system,
                             const std::vector<double>& times, Exec exec) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(system.H_int);
  if (es.info() != Eigen::Success)
    throw NumericalError("interaction-matrix eigendecomposition failed");
  const Eigen::MatrixXcd& V = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();
  const int dim = system.dim;
  const int d = system.params.d;
  const int top_rows = dim / d;

  // P_top(t) = sum_{mu,nu} Ptilde_{nu mu} rho_{mu nu} e^{-i(lam_mu-lam_nu)t}
  // with Ptilde the top-level projector and rho the initial state, both in
  // the eigenbasis. W below collects the (mu, nu) coefficient.
  const Eigen::MatrixXcd A = V.bottomRows(top_rows);
  const Eigen::MatrixXcd Pt = A.adjoint() * A;
  const Eigen::MatrixXcd rho =
      V.adjoint() * system.init_weights.asDiagonal() * V;
  const Eigen::MatrixXcd W = Pt.transpose().cwiseProduct(rho);

  EvolutionResult out;
  out.times = times;
  out.p_top.assign(times.size(), 0.0);
  parallel_for(exec, times.size(), [&](std::size_t i) {
    const double t = times[i];
    double acc = W.diagonal().real().sum();
    for (int mu = 0; mu < dim; ++mu) {
      for (int nu = mu + 1; nu < dim; ++nu) {
        const std::complex<double> w = W(mu, nu);
        if (w == std::complex<double>(0.0, 0.0)) continue;
        const double phase = (lam[mu] - lam[nu]) * t;
        acc += 2.0 * (w.real() * std::cos(phase) + w.imag() * std::sin(phase));
      }
    }
    out.p_top[i] = acc;
  });
  return out;
}

std::vector<std::vector<double>> evolve_level_populations(
    const OracleSystem& system, const std::vector<double>& times) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(system.H_int);
  if (es.info() != Eigen::Success)
    throw NumericalError("interaction-matrix eigendecomposition failed");
  const Eigen::MatrixXcd& V = es.eigenvectors();
  const Eigen::VectorXd& lam = es.eigenvalues();
  const int dim = system.dim;
  const int d = system.params.d;
  const int rows = dim / d;
  const Eigen::MatrixXcd rho =
      V.adjoint() * system.init_weights.asDiagonal() * V;

  std::vector<std::vector<double>> out(times.size(),
                                       std::vector<double>(std::size_t(d), 0.0));
  for (int level = 0; level < d; ++level) {
    const Eigen::MatrixXcd A = V.middleRows(Eigen::Index(level) * rows, rows);
    const Eigen::MatrixXcd W =
        (A.adjoint() * A).transpose().cwiseProduct(rho);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      double acc = W.diagonal().real().sum();
      for (int mu = 0; mu < dim; ++mu) {
        for (int nu = mu + 1; nu < dim; ++nu) {
          const std::complex<double> w = W(mu, nu);
          if (w == std::complex<double>(0.0, 0.0)) continue;
          const double phase = (lam[mu] - lam[nu]) * t;
          acc += 2.0 * (w.real() * std::cos(phase) + w.imag() * std::sin(phase));
        }
      }
      out[i][std::size_t(level)] = acc;
    }
  }
  return out;
}

void dump_matrix(const OracleSystem& system, std::ostream& os) {
  for (int i = 0; i < system.dim; ++i)
    os << "# basis[" << i << "] = " << system.basis_labels[std::size_t(i)] << "\n";
  os.precision(17);
  for (int i = 0; i < system.dim; ++i) {
    for (int j = 0; j < system.dim; ++j) {
      const std::complex<double> v = system.H_int(i, j);
      if (v == std::complex<double>(0.0, 0.0)) continue;
      os << i << " " << j << " " << v.real() << " " << v.imag() << "\n";
    }
  }
}

}  // namespace qclock
