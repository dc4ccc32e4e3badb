#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qclock/csv.hpp"
#include "qclock/exec.hpp"
#include "qclock/params.hpp"
#include "qclock/sampler.hpp"

namespace qclock {

enum class SweepAxis { d, M, c, g };

SweepAxis parse_axis(const std::string& name);
std::string to_string(SweepAxis axis);

// Metric columns a sweep can emit, in canonical order.
const std::vector<std::string>& sweep_output_names();

// Comma-separated numbers; "inf" is accepted as a value (only the M axis
// admits it). Throws ValidationError on anything else.
std::vector<double> parse_value_list(const std::string& text);

struct SweepConfig {
  ClockParams base;
  SweepAxis axis = SweepAxis::d;
  // Axis values in emission order. d and M values must be integral; M may
  // be infinite.
  std::vector<double> values;
  // Requested metric columns; empty selects all of sweep_output_names().
  std::vector<std::string> outputs;
  // Report the single-bath reference clock instead of the driven one.
  bool baseline = false;
};

// One row per axis value, in input order. Invalid axis values (parameters
// that fail validation) throw before any evaluation; points that fail during
// evaluation (degenerate hazard, numerical breakdown) become error rows with
// the diagnostic in the trailing "error" column, R = epsilon = 0 and
// t_bar = inf.
Table run_sweep(const SweepConfig& config, Exec exec = Exec::serial);

const std::vector<std::string>& figure_preset_names();

// Long-format curve family (curve, x, y) for one of the named presets.
// Throws ValidationError for an unknown preset name.
Table run_figure(const std::string& preset, Exec exec = Exec::serial);

struct OracleCheckCase {
  ClockParams params;
  std::string label;
};

// Small instances crossed with a zero-T and a finite-T bath assignment.
std::vector<OracleCheckCase> default_oracle_grid();

// Brute-force cross-check: per instance, the maximum absolute deviation
// between the closed-form top-level occupation and the dense unitary
// evolution over times_per_instance points in [0, 2 pi / g]; pass at 1e-8.
// Instances over the dense-size guardrail become "skipped" rows, which do
// not fail the run. all_pass (optional) receives false iff any row fails.
Table run_oracle_check(const std::vector<OracleCheckCase>& grid,
                       int times_per_instance, Exec exec = Exec::serial,
                       bool* all_pass = nullptr);

// Single-row metrics table for one parameter set; errors propagate.
Table metrics_table(const ClockParams& params, bool baseline = false);

// Occupation-versus-time table. variant is one of general, two-qubit,
// horizontal, baseline; points >= 2 samples are spaced uniformly on
// [0, t_max], with t_max <= 0 meaning two phase cycles (2 pi / g).
Table ptop_table(const ClockParams& params, const std::string& variant,
                 int points, double t_max);

// Single-column export of a tick sample with full provenance metadata
// (parameters, seed, generator id, reset-latency convention).
Table sample_table(const ClockParams& params, const TickSample& sample);

}  // namespace qclock
