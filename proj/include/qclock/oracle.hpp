#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qclock/exec.hpp"
#include "qclock/params.hpp"

namespace qclock {

// Exact finite-dimensional model of the clockwork: ladder tensor M columns
// of d-1 two-qubit machines. Basis ordering (fixed, so fixtures reproduce
// bit-for-bit): ladder index slowest; then columns k = 1..M with k = 1 most
// significant; within a column transitions j = 1..d-1 with j = 1 most
// significant; each machine pair contributes one base-4 digit 2*cold + hot.
struct OracleSystem {
  ClockParams params;
  int dim = 0;
  std::vector<int> ladder_of;          // ladder level of each basis state
  std::vector<std::string> basis_labels;
  Eigen::MatrixXcd H_int;              // Hermitian interaction, energy units
  Eigen::VectorXd H0_diag;             // free Hamiltonian diagonal
  Eigen::VectorXd init_weights;        // thermal product weights, sum 1
};

// Hilbert dimension d * 4^{M(d-1)} as a double (exact in the constructible
// range, approximate far beyond it; infinity for M = infinity).
double oracle_dimension(int d, const MachineCount& M);

// Builds the full system. Throws SizeError when the dimension exceeds 4096
// (dense-methods guardrail) or M is infinite, with the required dimension in
// the message.
OracleSystem build_oracle(const ClockParams& params);

// Single column-k term of the interaction (k in 1..M): the ladder move
// conditioned on column k being primed and all later columns unprimed.
// H_int == sum_k oracle_h_k, and distinct terms have disjoint support.
Eigen::MatrixXcd oracle_h_k(const ClockParams& params, int k);

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> p_top;
};

// Diagonalizes H_int once, then reconstructs the top-level population at the
// requested times. The free part never enters: it commutes with H_int and
// the initial state is diagonal, so only interaction phases survive.
EvolutionResult evolve_p_top(const OracleSystem& system,
                             const std::vector<double>& times,
                             Exec exec = Exec::serial);

// Populations of every ladder level (result[t][level]); their sum is 1 at
// each time, which the tests use as the unitarity check.
std::vector<std::vector<double>> evolve_level_populations(
    const OracleSystem& system, const std::vector<double>& times);

// One row per nonzero of H_int, "row col real imag", preceded by commented
// basis labels. Plain text for external inspection.
void dump_matrix(const OracleSystem& system, std::ostream& os);

}  // namespace qclock
