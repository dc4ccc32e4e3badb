#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace qclock {

// Number of two-qubit machines coupled to each ladder transition. The
// infinite-machine limit is a first-class value: every closed form in the
// library has a well-defined M -> infinity limit, so it is represented
// symbolically instead of by a large float.
class MachineCount {
 public:
  constexpr MachineCount() = default;  // M = 1

  static MachineCount finite(std::uint64_t m);
  static constexpr MachineCount infinite() {
    MachineCount mc;
    mc.m_ = 0;
    return mc;
  }
  // Accepts "inf" (case-insensitive, also "infinity") or a positive integer.
  static MachineCount parse(const std::string& text);

  constexpr bool is_infinite() const { return m_ == 0; }
  std::uint64_t value() const;  // finite values only
  double as_double() const {
    return is_infinite() ? std::numeric_limits<double>::infinity()
                         : double(m_);
  }
  std::string str() const;

  friend constexpr bool operator==(MachineCount a, MachineCount b) = default;

 private:
  std::uint64_t m_ = 1;  // 0 encodes infinity; accessors hide the encoding
};

// Full parameter set of one clock. Energies are in units of E_C unless the
// caller chooses otherwise (hbar = k_B = 1), times in seconds, c in 1/s.
struct ClockParams {
  int d = 2;             // ladder dimension (>= 2)
  MachineCount M{};      // machines per transition
  double g = 1.0;        // machine-ladder coupling (energy = 1/time)
  double c = 1.0;        // top-level decay rate into the field (1/s)
  double beta_C = std::numeric_limits<double>::infinity();  // cold bath
  double beta_H = 0.0;                                      // hot bath
  double E_C = 1.0;      // cold-qubit gap
  double E_H = 2.0;      // hot-qubit gap

  double E_L() const { return E_H - E_C; }  // ladder spacing

  // Throws ValidationError on the first violated constraint:
  // d >= 2, M >= 1, g > 0, c > 0, E_H > E_C > 0, beta_C > beta_H >= 0
  // (beta_C may be infinity; beta_H must be finite).
  void validate() const;
};

// Partition functions and the thermal ladder occupation at beta_C.
struct PartitionSet {
  double Z_C = 0.0;  // cold qubit, in (1, 2]
  double Z_H = 0.0;  // hot qubit, in (1, 2]
  double Z_L = 0.0;  // ladder at beta_C
  std::vector<double> ladder_pop;  // <n|tau_L(beta_C)|n>, sums to 1
};

// 1 + e^{-beta E}. beta = infinity gives exactly 1, beta = 0 exactly 2.
double qubit_partition(double E, double beta);

PartitionSet ladder_partition(const ClockParams& params);

// Per-excitation energy bookkeeping of the machine cycle: each unit moved
// up the ladder draws E_H from the hot bath, deposits E_L = E_H - E_C of
// work on the ladder and dumps E_C into the cold bath; a full bottom-to-top
// excitation repeats this d-1 times.
struct EnergyAccount {
  double Q_in = 0.0;    // heat drawn from the hot bath, (d-1) E_H
  double W = 0.0;       // work stored in the ladder, (d-1) E_L
  double Q_out = 0.0;   // heat dumped into the cold bath, (d-1) E_C
  double eta_th = 0.0;  // W / Q_in = E_L / (E_L + E_C)
};

// Q_in is assembled as W + Q_out so the first law holds bit-exactly.
EnergyAccount energy_account(const ClockParams& params);

}  // namespace qclock
