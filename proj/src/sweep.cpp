#include "qclock/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qclock/errors.hpp"
#include "qclock/oracle.hpp"
#include "qclock/philox.hpp"
#include "qclock/profile.hpp"
#include "qclock/tick_stats.hpp"
#include "qclock/version.hpp"

namespace qclock {

SweepAxis parse_axis(const std::string& name) {
  if (name == "d") return SweepAxis::d;
  if (name == "M") return SweepAxis::M;
  if (name == "c") return SweepAxis::c;
  if (name == "g") return SweepAxis::g;
  throw ValidationError("unknown sweep axis '" + name +
                        "' (expected d, M, c or g)");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::d: return "d";
    case SweepAxis::M: return "M";
    case SweepAxis::c: return "c";
    case SweepAxis::g: return "g";
  }
  return "?";
}

const std::vector<std::string>& sweep_output_names() {
  static const std::vector<std::string> names = {"N",     "R",       "epsilon",
                                                 "t_bar", "delta_t", "C_M"};
  return names;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(pos, comma - pos);
    // Trim surrounding blanks so "1, 2, 4" parses.
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    token = (b == std::string::npos) ? "" : token.substr(b, e - b + 1);
    if (token.empty())
      throw ValidationError("empty entry in value list '" + text + "'");
    if (token == "inf" || token == "Inf" || token == "INF") {
      values.push_back(std::numeric_limits<double>::infinity());
    } else {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(token, &used);
      } catch (const std::exception&) {
        throw ValidationError("cannot parse value '" + token + "'");
      }
      if (used != token.size())
        throw ValidationError("cannot parse value '" + token + "'");
      values.push_back(v);
    }
    pos = comma + 1;
  }
  return values;
}

namespace {

constexpr double kOracleCheckTol = 1e-8;

std::string format_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string format_beta(double beta) {
  return std::isinf(beta) ? "inf" : format_full(beta);
}

// Metadata keys mirror the CLI flags one-to-one.
void append_params_metadata(Table& table, const ClockParams& p) {
  table.metadata.emplace_back("d", std::to_string(p.d));
  table.metadata.emplace_back("M", p.M.str());
  table.metadata.emplace_back("g", format_full(p.g));
  table.metadata.emplace_back("c", format_full(p.c));
  table.metadata.emplace_back("beta_c", format_beta(p.beta_C));
  table.metadata.emplace_back("beta_h", format_full(p.beta_H));
  table.metadata.emplace_back("e_c", format_full(p.E_C));
  table.metadata.emplace_back("e_h", format_full(p.E_H));
}

struct PointResult {
  TickMoments tm{};
  double C_M = std::numeric_limits<double>::quiet_NaN();
  bool ok = false;
  std::string error;
};

// Evaluates one sweep point. Parameters are validated by the caller;
// failures here are properties of the point (degenerate hazard, numerical
// breakdown), recorded rather than thrown so one bad point cannot abort a
// sweep.
PointResult evaluate_point(const ClockParams& p, bool baseline) {
  PointResult r;
  try {
    r.C_M = effective_coupling(p);
  } catch (const ClockError& e) {
    r.error = e.what();
  }
  try {
    r.tm = baseline ? baseline_metrics(p) : clock_metrics(p);
    r.ok = true;
  } catch (const ClockError& e) {
    if (r.error.empty()) r.error = e.what();
    r.tm = TickMoments{};
    r.tm.t_bar = std::numeric_limits<double>::infinity();
    r.tm.t2_bar = std::numeric_limits<double>::infinity();
    r.tm.delta_t = std::numeric_limits<double>::quiet_NaN();
    r.tm.N = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double metric_value(const PointResult& r, const std::string& name) {
  if (name == "N") return r.tm.N;
  if (name == "R") return r.tm.R;
  if (name == "epsilon") return r.tm.epsilon;
  if (name == "t_bar") return r.tm.t_bar;
  if (name == "delta_t") return r.tm.delta_t;
  return r.C_M;  // "C_M"; names are validated before evaluation
}

std::string axis_cell(SweepAxis axis, double v) {
  return (axis == SweepAxis::d || axis == SweepAxis::M) ? format_count(v)
                                                        : format_full(v);
}

ClockParams with_axis(const ClockParams& base, SweepAxis axis, double v) {
  ClockParams p = base;
  switch (axis) {
    case SweepAxis::d:
      if (!(v == std::floor(v)) || v < 2.0 ||
          v > double(std::numeric_limits<int>::max()))
        throw ValidationError("axis value for d must be an integer >= 2, got " +
                              format_short(v));
      p.d = int(v);
      break;
    case SweepAxis::M:
      if (std::isinf(v) && v > 0.0) {
        p.M = MachineCount::infinite();
      } else if (v == std::floor(v) && v >= 1.0 && v <= 1e18) {
        p.M = MachineCount::finite(std::uint64_t(v));
      } else {
        throw ValidationError(
            "axis value for M must be a positive integer or inf, got " +
            format_short(v));
      }
      break;
    case SweepAxis::c:
      p.c = v;
      break;
    case SweepAxis::g:
      p.g = v;
      break;
  }
  return p;
}

}  // namespace

Table run_sweep(const SweepConfig& config, Exec exec) {
  if (config.values.empty())
    throw ValidationError("sweep values list must not be empty");

  std::vector<std::string> outputs =
      config.outputs.empty() ? sweep_output_names() : config.outputs;
  for (const std::string& name : outputs) {
    const auto& known = sweep_output_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ValidationError("unknown sweep output '" + name + "'");
  }

  // Materialize and validate every point before evaluating any: an invalid
  // axis value is a configuration error, not a per-point failure.
  std::vector<ClockParams> points;
  points.reserve(config.values.size());
  for (double v : config.values) {
    ClockParams p = with_axis(config.base, config.axis, v);
    try {
      p.validate();
    } catch (const ValidationError& e) {
      throw ValidationError("axis value " + axis_cell(config.axis, v) + ": " +
                            e.what());
    }
    points.push_back(p);
  }

  std::vector<PointResult> results(points.size());
  parallel_for(exec, points.size(), [&](std::size_t i) {
    results[i] = evaluate_point(points[i], config.baseline);
  });

  Table table;
  table.metadata.emplace_back("version", kVersion);
  table.metadata.emplace_back("command", "sweep");
  table.metadata.emplace_back("axis", to_string(config.axis));
  table.metadata.emplace_back("baseline", config.baseline ? "1" : "0");
  append_params_metadata(table, config.base);

  table.columns.push_back(to_string(config.axis));
  for (const std::string& name : outputs) table.columns.push_back(name);
  table.columns.push_back("error");

  for (std::size_t i = 0; i < results.size(); ++i) {
    std::vector<std::string> row;
    row.push_back(axis_cell(config.axis, config.values[i]));
    for (const std::string& name : outputs)
      row.push_back(format_full(metric_value(results[i], name)));
    row.push_back(results[i].error);
    table.rows.push_back(std::move(row));
  }
  return table;
}

namespace {

enum class FigX { d, R, epsilon };
enum class FigY { N, R };
enum class FigErr { truncate, zero_R };

struct CurveSpec {
  std::string id;
  ClockParams params;  // d is overwritten per point
  int d_lo = 2;
  int d_hi = 2;
};

struct FigureDef {
  std::string name;
  FigX x = FigX::d;
  FigY y = FigY::N;
  FigErr on_error = FigErr::truncate;
  // Stop a curve at the first d where both N and R decreased relative to
  // the previous d: such points are dominated (worse accuracy and worse
  // resolution), and everything beyond them only gets worse.
  bool drop_dominated_tail = false;
  std::vector<CurveSpec> curves;
  std::vector<std::pair<std::string, std::string>> extra;
};

ClockParams zero_T_base(double g, double c, MachineCount M) {
  ClockParams p;  // defaults: beta_C = inf, beta_H = 0, E_C = 1, E_H = 2
  p.g = g;
  p.c = c;
  p.M = M;
  return p;
}

std::string m_id(MachineCount M) { return "M=" + M.str(); }

FigureDef figure_def(const std::string& preset) {
  FigureDef def;
  def.name = preset;
  if (preset == "fig4") {
    // Accuracy vs ladder dimension per (M, c) curve. The source plot does
    // not tabulate its curve parameters; these are reconstruction defaults.
    def.x = FigX::d;
    const MachineCount ms[] = {MachineCount::finite(1), MachineCount::finite(5),
                               MachineCount::infinite()};
    const double cs[] = {1e2, 1e3, 1e4};
    for (const MachineCount& m : ms)
      for (double c : cs)
        def.curves.push_back({m_id(m) + ";c=" + format_short(c),
                              zero_T_base(1.0, c, m), 2, 40});
    def.extra = {{"curve_set", "reconstruction-default"},
                 {"m_values", "1,5,inf"},
                 {"c_values", "100,1000,10000"},
                 {"g", "1"}};
  } else if (preset == "fig5") {
    // Accuracy vs resolution, resolution driven by d. Finite M at c = 25;
    // the infinite-M envelope additionally at c = 100 and 1000.
    def.x = FigX::R;
    for (std::uint64_t m : {1, 2, 5, 10})
      def.curves.push_back({m_id(MachineCount::finite(m)) + ";c=25",
                            zero_T_base(1.0, 25.0, MachineCount::finite(m)), 2,
                            60});
    for (double c : {25.0, 100.0, 1000.0})
      def.curves.push_back({"M=inf;c=" + format_short(c),
                            zero_T_base(1.0, c, MachineCount::infinite()), 2,
                            120});
    def.extra = {{"g", "1"}};
  } else if (preset == "fig6") {
    // Accuracy vs dissipation rate at c = 1e5; dominated tails excluded.
    def.x = FigX::epsilon;
    def.drop_dominated_tail = true;
    for (std::uint64_t m : {1, 2, 5, 10})
      def.curves.push_back({m_id(MachineCount::finite(m)),
                            zero_T_base(1.0, 1e5, MachineCount::finite(m)), 2,
                            100});
    def.curves.push_back(
        {"M=inf", zero_T_base(1.0, 1e5, MachineCount::infinite()), 2, 100});
    def.extra = {{"g", "1"}, {"c", "100000"}};
  } else if (preset == "fig8a") {
    // Accuracy vs d for several couplings g at fixed c = 10, M infinite.
    // The g list is a reconstruction default.
    def.x = FigX::d;
    for (double g : {0.1, 0.5, 1.0, 2.0})
      def.curves.push_back({"g=" + format_short(g),
                            zero_T_base(g, 10.0, MachineCount::infinite()), 2,
                            50});
    def.extra = {{"curve_set", "reconstruction-default"},
                 {"g_values", "0.1,0.5,1,2"},
                 {"c", "10"},
                 {"M", "inf"}};
  } else if (preset == "fig8b") {
    // Resolution vs d per M at g = 1, c = 1000. Degenerate points emit
    // R = 0 rows: for finite M the top-level amplitude underflows with
    // growing d and the resolution genuinely collapses to zero.
    def.x = FigX::d;
    def.y = FigY::R;
    def.on_error = FigErr::zero_R;
    for (std::uint64_t m : {1, 2, 5, 10})
      def.curves.push_back({m_id(MachineCount::finite(m)),
                            zero_T_base(1.0, 1e3, MachineCount::finite(m)), 2,
                            100});
    def.curves.push_back(
        {"M=inf", zero_T_base(1.0, 1e3, MachineCount::infinite()), 2, 100});
    def.extra = {{"g", "1"}, {"c", "1000"}};
  } else if (preset == "fig9") {
    // Accuracy vs resolution for several g at M infinite, c = 25. The g
    // list is a reconstruction default.
    def.x = FigX::R;
    for (double g : {0.5, 1.0, 2.0, 4.0})
      def.curves.push_back({"g=" + format_short(g),
                            zero_T_base(g, 25.0, MachineCount::infinite()), 2,
                            120});
    def.extra = {{"curve_set", "reconstruction-default"},
                 {"g_values", "0.5,1,2,4"},
                 {"c", "25"},
                 {"M", "inf"}};
  } else {
    throw ValidationError("unknown figure preset '" + preset + "'");
  }
  return def;
}

}  // namespace

const std::vector<std::string>& figure_preset_names() {
  static const std::vector<std::string> names = {"fig4",  "fig5",  "fig6",
                                                 "fig8a", "fig8b", "fig9"};
  return names;
}

Table run_figure(const std::string& preset, Exec exec) {
  const FigureDef def = figure_def(preset);

  struct FlatPoint {
    std::size_t curve = 0;
    int d = 0;
  };
  std::vector<FlatPoint> flat;
  std::vector<ClockParams> params;
  for (std::size_t ci = 0; ci < def.curves.size(); ++ci) {
    for (int d = def.curves[ci].d_lo; d <= def.curves[ci].d_hi; ++d) {
      ClockParams p = def.curves[ci].params;
      p.d = d;
      p.validate();
      flat.push_back({ci, d});
      params.push_back(p);
    }
  }

  std::vector<PointResult> results(flat.size());
  parallel_for(exec, flat.size(), [&](std::size_t i) {
    results[i] = evaluate_point(params[i], false);
  });

  Table table;
  table.metadata.emplace_back("version", kVersion);
  table.metadata.emplace_back("command", "figure");
  table.metadata.emplace_back("preset", def.name);
  table.metadata.emplace_back("beta_c", "inf");
  table.metadata.emplace_back("beta_h", "0");
  table.metadata.emplace_back("e_c", "1");
  table.metadata.emplace_back("e_h", "2");
  for (const auto& kv : def.extra) table.metadata.emplace_back(kv);
  table.columns = {"curve", "x", "y"};

  std::size_t i = 0;
  for (std::size_t ci = 0; ci < def.curves.size(); ++ci) {
    bool have_prev = false, truncated = false;
    double prev_N = 0.0, prev_R = 0.0;
    for (; i < flat.size() && flat[i].curve == ci; ++i) {
      if (truncated) continue;  // drain the remaining flat points
      const PointResult& r = results[i];
      if (!r.ok) {
        if (def.on_error == FigErr::zero_R) {
          table.rows.push_back(
              {def.curves[ci].id, format_count(flat[i].d), format_full(0.0)});
          continue;
        }
        truncated = true;
        continue;
      }
      if (def.drop_dominated_tail && have_prev && r.tm.N < prev_N &&
          r.tm.R < prev_R) {
        truncated = true;
        continue;
      }
      double x = 0.0;
      switch (def.x) {
        case FigX::d: x = double(flat[i].d); break;
        case FigX::R: x = r.tm.R; break;
        case FigX::epsilon: x = r.tm.epsilon; break;
      }
      const double y = (def.y == FigY::N) ? r.tm.N : r.tm.R;
      table.rows.push_back({def.curves[ci].id,
                            def.x == FigX::d ? format_count(x) : format_full(x),
                            format_full(y)});
      prev_N = r.tm.N;
      prev_R = r.tm.R;
      have_prev = true;
    }
  }
  return table;
}

std::vector<OracleCheckCase> default_oracle_grid() {
  std::vector<OracleCheckCase> grid;
  const std::pair<int, int> dims[] = {{2, 1}, {2, 2}, {3, 1}, {3, 2}, {4, 1}};
  for (const auto& [d, m] : dims) {
    for (int finite_T = 0; finite_T < 2; ++finite_T) {
      ClockParams p;
      p.d = d;
      p.M = MachineCount::finite(std::uint64_t(m));
      p.g = 1.0;
      p.c = 1.0;  // irrelevant to the unitary stage, but must validate
      if (finite_T) {
        p.beta_C = 3.0;  // beta_C E_C = 3 at E_C = 1
        p.beta_H = 0.1;  // beta_H E_H = 0.2 at E_H = 2
      }
      grid.push_back({p, "d=" + std::to_string(d) + " M=" + std::to_string(m) +
                             (finite_T ? " finite-T" : " zero-T")});
    }
  }
  return grid;
}

Table run_oracle_check(const std::vector<OracleCheckCase>& grid,
                       int times_per_instance, Exec exec, bool* all_pass) {
  if (times_per_instance < 2)
    throw ValidationError("oracle check needs at least 2 times per instance");
  if (grid.empty()) throw ValidationError("oracle check grid is empty");

  bool ok_all = true;
  Table table;
  table.metadata.emplace_back("version", kVersion);
  table.metadata.emplace_back("command", "oracle-check");
  table.metadata.emplace_back("tolerance", format_full(kOracleCheckTol));
  table.metadata.emplace_back("times_per_instance",
                              std::to_string(times_per_instance));
  table.columns = {"case", "d", "M", "beta_c", "beta_h",
                   "dim",  "max_error", "status", "error"};

  for (const OracleCheckCase& item : grid) {
    const ClockParams& p = item.params;
    std::vector<std::string> row = {
        item.label,         std::to_string(p.d), p.M.str(),
        format_beta(p.beta_C), format_full(p.beta_H)};
    try {
      p.validate();
      OracleSystem system = build_oracle(p);  // SizeError when oversized

      std::vector<double> times(std::size_t(times_per_instance), 0.0);
      const double t_max = 2.0 * std::numbers::pi / p.g;
      for (int i = 0; i < times_per_instance; ++i)
        times[std::size_t(i)] = t_max * double(i) / double(times_per_instance - 1);

      EvolutionResult evolved = evolve_p_top(system, times, exec);
      const TopLevelProfile profile = general_profile(p);
      double max_err = 0.0;
      for (std::size_t i = 0; i < times.size(); ++i)
        max_err = std::max(
            max_err, std::abs(evolved.p_top[i] - profile.evaluate(times[i])));

      const bool pass = max_err <= kOracleCheckTol;
      if (!pass) ok_all = false;
      row.push_back(std::to_string(system.dim));
      row.push_back(format_full(max_err));
      row.push_back(pass ? "pass" : "fail");
      row.push_back("");
    } catch (const SizeError& e) {
      // Guardrail violations are listed, not fatal and not failures.
      row.push_back(format_count(oracle_dimension(p.d, p.M)));
      row.push_back(format_full(std::numeric_limits<double>::quiet_NaN()));
      row.push_back("skipped");
      row.push_back(e.what());
    } catch (const ClockError& e) {
      ok_all = false;
      row.push_back("");
      row.push_back(format_full(std::numeric_limits<double>::quiet_NaN()));
      row.push_back("error");
      row.push_back(e.what());
    }
    table.rows.push_back(std::move(row));
  }
  if (all_pass) *all_pass = ok_all;
  return table;
}

Table metrics_table(const ClockParams& params, bool baseline) {
  params.validate();
  const TickMoments tm = baseline ? baseline_metrics(params)
                                  : clock_metrics(params);
  double C_M = std::numeric_limits<double>::quiet_NaN();
  try {
    C_M = effective_coupling(params);
  } catch (const ClockError&) {
    // Metrics stand on their own; C_M stays NaN (degenerate gradient).
  }

  Table table;
  table.metadata.emplace_back("version", kVersion);
  table.metadata.emplace_back("command", "metrics");
  table.metadata.emplace_back("baseline", baseline ? "1" : "0");
  append_params_metadata(table, params);
  table.columns = {"N",       "R",   "epsilon",      "t_bar",
                   "delta_t", "t2_bar", "C_M",       "cycle_hazard",
                   "precision_warning"};
  table.rows.push_back({format_full(tm.N), format_full(tm.R),
                        format_full(tm.epsilon), format_full(tm.t_bar),
                        format_full(tm.delta_t), format_full(tm.t2_bar),
                        format_full(C_M), format_full(tm.cycle_hazard),
                        tm.precision_warning ? "1" : "0"});
  return table;
}

Table ptop_table(const ClockParams& params, const std::string& variant,
                 int points, double t_max) {
  params.validate();
  if (points < 2)
    throw ValidationError("occupation table needs at least 2 points");

  TopLevelProfile profile;
  if (variant == "general")
    profile = general_profile(params);
  else if (variant == "two-qubit")
    profile = two_qubit_profile(params);
  else if (variant == "horizontal")
    profile = horizontal_profile(params);
  else if (variant == "baseline")
    profile = baseline_profile(params);
  else
    throw ValidationError(
        "unknown profile variant '" + variant +
        "' (expected general, two-qubit, horizontal or baseline)");

  if (!(t_max > 0.0)) t_max = 2.0 * std::numbers::pi / params.g;

  Table table;
  table.metadata.emplace_back("version", kVersion);
  table.metadata.emplace_back("command", "ptop");
  table.metadata.emplace_back("variant", variant);
  table.metadata.emplace_back("points", std::to_string(points));
  table.metadata.emplace_back("t_max", format_full(t_max));
  append_params_metadata(table, params);
  table.columns = {"t", "p_top"};
  for (int i = 0; i < points; ++i) {
    const double t = t_max * double(i) / double(points - 1);
    table.rows.push_back({format_full(t), format_full(profile.evaluate(t))});
  }
  return table;
}

Table sample_table(const ClockParams& params, const TickSample& sample) {
  Table table;
  table.metadata.emplace_back("version", kVersion);
  table.metadata.emplace_back("command", "sample");
  append_params_metadata(table, params);
  table.metadata.emplace_back("count", std::to_string(sample.count));
  table.metadata.emplace_back("seed", std::to_string(sample.seed));
  table.metadata.emplace_back("generator", kGeneratorId);
  // Ticks are emitted as if the detector rearms instantly; no dead time is
  // modeled between a tick and the next cycle.
  table.metadata.emplace_back("reset_latency", "0");
  table.columns = {"tick_time"};
  for (double t : sample.tick_times) table.rows.push_back({format_full(t)});
  return table;
}

}  // namespace qclock
