#include "qclock/params.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "qclock/errors.hpp"
#include "qclock/special.hpp"

namespace qclock {

MachineCount MachineCount::finite(std::uint64_t m) {
  if (m == 0) throw ValidationError("machine count M must be at least 1");
  MachineCount mc;
  mc.m_ = m;
  return mc;
}

std::uint64_t MachineCount::value() const {
  if (is_infinite())
    throw ValidationError("machine count is infinite; no finite value");
  return m_;
}

MachineCount MachineCount::parse(const std::string& text) {
  std::string low;
  for (char ch : text)
    low.push_back(char(std::tolower(static_cast<unsigned char>(ch))));
  if (low == "inf" || low == "infinity") return infinite();
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    throw ValidationError("machine count M must be a positive integer or 'inf', got '" + text + "'");
  }
  if (pos != text.size() || text.find('-') != std::string::npos)
    throw ValidationError("machine count M must be a positive integer or 'inf', got '" + text + "'");
  return finite(v);
}

std::string MachineCount::str() const {
  return is_infinite() ? "inf" : std::to_string(m_);
}

void ClockParams::validate() const {
  if (d < 2)
    throw ValidationError("ladder dimension d must be at least 2, got " + std::to_string(d));
  // MachineCount cannot encode M < 1, nothing to check for M.
  if (!(g > 0.0) || !std::isfinite(g))
    throw ValidationError("coupling g must be positive and finite");
  if (!(c > 0.0) || !std::isfinite(c))
    throw ValidationError("decay rate c must be positive and finite");
  if (!(E_C > 0.0) || !std::isfinite(E_C))
    throw ValidationError("cold gap E_C must be positive and finite");
  if (!(E_H > E_C) || !std::isfinite(E_H))
    throw ValidationError("hot gap E_H must exceed E_C");
  if (std::isnan(beta_C) || std::isnan(beta_H))
    throw ValidationError("inverse temperatures must not be NaN");
  if (!(beta_H >= 0.0) || !std::isfinite(beta_H))
    throw ValidationError("beta_H must be finite and nonnegative");
  if (!(beta_C > beta_H))  // beta_C = infinity passes, equality does not
    throw ValidationError("cold bath must be strictly colder than the hot bath: beta_C > beta_H");
}

double qubit_partition(double E, double beta) {
  if (!(E > 0.0) || !std::isfinite(E))
    throw ValidationError("qubit gap must be positive and finite");
  if (std::isnan(beta) || beta < 0.0)
    throw ValidationError("inverse temperature must be nonnegative (or infinity)");
  return 1.0 + std::exp(-beta * E);  // exp(-inf) == 0 handles beta = infinity
}

PartitionSet ladder_partition(const ClockParams& p) {
  p.validate();
  PartitionSet ps;
  ps.Z_C = qubit_partition(p.E_C, p.beta_C);
  ps.Z_H = qubit_partition(p.E_H, p.beta_H);
  ps.ladder_pop.assign(std::size_t(p.d), 0.0);

  const double x = p.beta_C * p.E_L();  // may be infinity
  if (std::isinf(x)) {
    ps.Z_L = 1.0;
    ps.ladder_pop[0] = 1.0;
    return ps;
  }
  KahanSum z;
  for (int n = 0; n < p.d; ++n) z.add(std::exp(-double(n) * x));
  ps.Z_L = z.value();
  for (int n = 0; n < p.d; ++n)
    ps.ladder_pop[std::size_t(n)] = std::exp(-double(n) * x) / ps.Z_L;
  return ps;
}

EnergyAccount energy_account(const ClockParams& p) {
  p.validate();
  EnergyAccount ea;
  const double steps = double(p.d - 1);
  ea.W = steps * p.E_L();
  ea.Q_out = steps * p.E_C;
  ea.Q_in = ea.W + ea.Q_out;  // first law by construction
  ea.eta_th = p.E_L() / (p.E_L() + p.E_C);
  return ea;
}

}  // namespace qclock
