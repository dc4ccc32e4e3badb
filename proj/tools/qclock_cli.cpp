// Command-line front end: thin argument plumbing around the library. All
// computation lives in qclock; this file only maps flags, config files and
// exit codes.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 oracle-check failure.

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qclock/csv.hpp"
#include "qclock/errors.hpp"
#include "qclock/exec.hpp"
#include "qclock/params.hpp"
#include "qclock/sampler.hpp"
#include "qclock/sweep.hpp"
#include "qclock/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitOracleFail = 3;

struct Opts {
  std::string config_path;

  // Clock parameters; M and beta_c stay textual so "inf" survives.
  int d = 2;
  std::string M = "1";
  double c = 1.0;
  double g = 1.0;
  std::string beta_c = "inf";
  double beta_h = 0.0;
  double e_c = 1.0;
  double e_h = 2.0;

  // Output plumbing.
  std::string axis = "d";
  std::string values;
  std::string outputs;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool serial = false;
  bool baseline = false;

  // Subcommand extras.
  int points = 201;
  double t_max = 0.0;  // <= 0 selects two phase cycles
  std::string variant = "general";
  std::uint64_t count = 1000;
  int times = 100;
  std::string preset;
};

bool is_inf_text(std::string s) {
  for (char& ch : s) ch = char(std::tolower(static_cast<unsigned char>(ch)));
  return s == "inf" || s == "infinity";
}

double parse_beta(const std::string& text) {
  if (is_inf_text(text)) return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != text.size())
    throw qclock::ValidationError("cannot parse inverse temperature '" + text +
                                  "' (expected a number or inf)");
  return v;
}

qclock::ClockParams make_params(const Opts& o) {
  qclock::ClockParams p;
  p.d = o.d;
  p.M = qclock::MachineCount::parse(o.M);
  p.c = o.c;
  p.g = o.g;
  p.beta_C = parse_beta(o.beta_c);
  p.beta_H = o.beta_h;
  p.E_C = o.e_c;
  p.E_H = o.e_h;
  p.validate();
  return p;
}

// Relative output paths land in $QCLOCK_OUT_DIR when it is set; empty means
// stdout and absolute paths are taken verbatim.
std::string resolve_out(const std::string& out) {
  if (out.empty() || out.front() == '/') return out;
  const char* dir = std::getenv("QCLOCK_OUT_DIR");
  if (!dir || !*dir) return out;
  std::string prefix = dir;
  if (prefix.back() != '/') prefix += '/';
  return prefix + out;
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> names;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    std::string token = text.substr(pos, comma - pos);
    std::size_t b = token.find_first_not_of(" \t");
    std::size_t e = token.find_last_not_of(" \t");
    token = (b == std::string::npos) ? "" : token.substr(b, e - b + 1);
    if (token.empty())
      throw qclock::ValidationError("empty entry in name list '" + text + "'");
    names.push_back(token);
    pos = comma + 1;
  }
  return names;
}

// --- config file -------------------------------------------------------------
// Flat key-value JSON mirroring the flags one-to-one; a flag given on the
// command line always wins over the file.

using Json = nlohmann::json;

double config_number(const Json& v, const std::string& key) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string() && is_inf_text(v.get<std::string>()))
    return std::numeric_limits<double>::infinity();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t used = 0;
    try {
      double parsed = std::stod(s, &used);
      if (used == s.size()) return parsed;
    } catch (const std::exception&) {
    }
  }
  throw qclock::ValidationError("config key '" + key + "' is not a number");
}

std::string config_text(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return qclock::format_full(v.get<double>());
  throw qclock::ValidationError("config key '" + key + "' is not text");
}

// "values": either a comma string or a JSON array of numbers / "inf".
std::string config_list(const Json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string joined;
    for (const Json& item : v) {
      if (!joined.empty()) joined += ',';
      joined += config_text(item, key);
    }
    return joined;
  }
  throw qclock::ValidationError("config key '" + key +
                                "' is not a list or string");
}

bool config_bool(const Json& v, const std::string& key) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<long long>() != 0;
  throw qclock::ValidationError("config key '" + key + "' is not a boolean");
}

std::uint64_t config_uint(const Json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return std::uint64_t(v.get<long long>());
  throw qclock::ValidationError("config key '" + key +
                                "' is not a nonnegative integer");
}

int config_int(const Json& v, const std::string& key) {
  const double d = config_number(v, key);
  if (d != double(int(d)))
    throw qclock::ValidationError("config key '" + key + "' is not an integer");
  return int(d);
}

void apply_config_value(Opts& o, const std::string& key, const Json& v) {
  if (key == "d") o.d = config_int(v, key);
  else if (key == "M") o.M = config_text(v, key);
  else if (key == "c") o.c = config_number(v, key);
  else if (key == "g") o.g = config_number(v, key);
  else if (key == "beta_c") o.beta_c = config_text(v, key);
  else if (key == "beta_h") o.beta_h = config_number(v, key);
  else if (key == "e_c") o.e_c = config_number(v, key);
  else if (key == "e_h") o.e_h = config_number(v, key);
  else if (key == "axis") o.axis = config_text(v, key);
  else if (key == "values") o.values = config_list(v, key);
  else if (key == "outputs") o.outputs = config_list(v, key);
  else if (key == "out") o.out = config_text(v, key);
  else if (key == "format") o.format = config_text(v, key);
  else if (key == "seed") o.seed = config_uint(v, key);
  else if (key == "serial") o.serial = config_bool(v, key);
  else if (key == "baseline") o.baseline = config_bool(v, key);
  else if (key == "points") o.points = config_int(v, key);
  else if (key == "t_max") o.t_max = config_number(v, key);
  else if (key == "variant") o.variant = config_text(v, key);
  else if (key == "count") o.count = config_uint(v, key);
  else if (key == "times") o.times = config_int(v, key);
  else if (key == "preset") o.preset = config_text(v, key);
  else
    throw qclock::ValidationError("unknown config key '" + key + "'");
}

// Maps config keys to the flag that overrides them.
const std::map<std::string, std::string>& key_to_flag() {
  static const std::map<std::string, std::string> m = {
      {"d", "--d"},           {"M", "--M"},
      {"c", "--c"},           {"g", "--g"},
      {"beta_c", "--beta-c"}, {"beta_h", "--beta-h"},
      {"e_c", "--e-c"},       {"e_h", "--e-h"},
      {"axis", "--axis"},     {"values", "--values"},
      {"outputs", "--outputs"}, {"out", "--out"},
      {"format", "--format"}, {"seed", "--seed"},
      {"serial", "--serial"}, {"baseline", "--baseline"},
      {"points", "--points"}, {"t_max", "--t-max"},
      {"variant", "--variant"}, {"count", "--count"},
      {"times", "--times"},   {"preset", "preset"},
  };
  return m;
}

bool flag_given(const CLI::App* cmd, const std::string& name) {
  const CLI::Option* opt = cmd->get_option_no_throw(name);
  return opt && opt->count() > 0;
}

void load_config(Opts& o, const CLI::App* active) {
  if (o.config_path.empty()) return;
  std::ifstream file(o.config_path);
  if (!file)
    throw qclock::ValidationError("cannot open config file: " + o.config_path);
  Json j;
  try {
    j = Json::parse(file);
  } catch (const Json::parse_error& e) {
    throw qclock::ValidationError("config file " + o.config_path + ": " +
                                  e.what());
  }
  if (!j.is_object())
    throw qclock::ValidationError("config file must hold a flat JSON object");
  for (const auto& [key, value] : j.items()) {
    const auto it = key_to_flag().find(key);
    if (it == key_to_flag().end())
      throw qclock::ValidationError("unknown config key '" + key + "'");
    if (flag_given(active, it->second)) continue;  // flags override the file
    apply_config_value(o, key, value);
  }
}

// --- flag registration ---------------------------------------------------------

void add_param_flags(CLI::App* cmd, Opts& o) {
  cmd->add_option("--config", o.config_path,
                  "flat JSON config file; explicit flags override it");
  cmd->add_option("--d", o.d, "ladder dimension (>= 2)");
  cmd->add_option("--M", o.M, "machines per transition: positive integer or inf");
  cmd->add_option("--c", o.c, "top-level decay rate (1/s)");
  cmd->add_option("--g", o.g, "machine-ladder coupling");
  cmd->add_option("--beta-c", o.beta_c, "cold inverse temperature: number or inf");
  cmd->add_option("--beta-h", o.beta_h, "hot inverse temperature (finite, >= 0)");
  cmd->add_option("--e-c", o.e_c, "cold qubit gap");
  cmd->add_option("--e-h", o.e_h, "hot qubit gap");
  cmd->add_option("--out", o.out,
                  "output path (default stdout; relative paths land in "
                  "$QCLOCK_OUT_DIR when set)");
  cmd->add_option("--format", o.format, "output format: csv or json");
  cmd->add_option("--seed", o.seed, "RNG seed (used by sample)");
  cmd->add_flag("--serial", o.serial, "disable the OpenMP execution path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-machine quantum clock: tick statistics, sweeps and "
               "brute-force cross-checks"};
  app.set_version_flag("--version", std::string("qclock ") + QCLOCK_VERSION);
  app.require_subcommand(1);

  Opts o;

  CLI::App* ptop = app.add_subcommand(
      "ptop", "top-level occupation probability over time");
  add_param_flags(ptop, o);
  ptop->add_option("--points", o.points, "number of samples (>= 2)");
  ptop->add_option("--t-max", o.t_max,
                   "largest time; <= 0 selects two phase cycles");
  ptop->add_option("--variant", o.variant,
                   "profile: general, two-qubit, horizontal or baseline");

  CLI::App* metrics = app.add_subcommand(
      "metrics", "tick statistics for one parameter set");
  add_param_flags(metrics, o);
  metrics->add_flag("--baseline", o.baseline,
                    "report the single-bath reference clock");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "metrics along one varying parameter axis");
  add_param_flags(sweep, o);
  sweep->add_option("--axis", o.axis, "swept parameter: d, M, c or g");
  sweep->add_option("--values", o.values,
                    "comma-separated axis values (inf allowed for M)");
  sweep->add_option("--outputs", o.outputs,
                    "comma-separated metric columns (default: all)");
  sweep->add_flag("--baseline", o.baseline,
                  "report the single-bath reference clock");

  CLI::App* figure = app.add_subcommand(
      "figure", "long-format curve family for a named preset");
  add_param_flags(figure, o);
  figure->add_option("preset", o.preset,
                     "preset name: fig4, fig5, fig6, fig8a, fig8b or fig9");

  CLI::App* sample = app.add_subcommand(
      "sample", "draw tick times and export them with provenance");
  add_param_flags(sample, o);
  sample->add_option("--count", o.count, "number of ticks to draw (>= 1)");

  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "closed forms vs dense brute-force evolution");
  add_param_flags(oracle, o);
  oracle->add_option("--times", o.times, "time points per instance (>= 2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const CLI::App* active = app.get_subcommands().front();
    load_config(o, active);

    const qclock::Exec exec =
        o.serial ? qclock::Exec::serial : qclock::Exec::openmp;
    const qclock::TableFormat format = qclock::parse_table_format(o.format);
    const std::string out = resolve_out(o.out);

    if (*ptop) {
      const qclock::ClockParams p = make_params(o);
      qclock::write_table(qclock::ptop_table(p, o.variant, o.points, o.t_max),
                          format, out);
      return kExitOk;
    }
    if (*metrics) {
      qclock::write_table(qclock::metrics_table(make_params(o), o.baseline),
                          format, out);
      return kExitOk;
    }
    if (*sweep) {
      qclock::SweepConfig cfg;
      cfg.base = make_params(o);
      cfg.axis = qclock::parse_axis(o.axis);
      if (o.values.empty())
        throw qclock::ValidationError("sweep requires --values");
      cfg.values = qclock::parse_value_list(o.values);
      if (!o.outputs.empty()) cfg.outputs = split_names(o.outputs);
      cfg.baseline = o.baseline;
      qclock::write_table(qclock::run_sweep(cfg, exec), format, out);
      return kExitOk;
    }
    if (*figure) {
      if (o.preset.empty())
        throw qclock::ValidationError(
            "figure requires a preset name (fig4, fig5, fig6, fig8a, fig8b "
            "or fig9)");
      qclock::write_table(qclock::run_figure(o.preset, exec), format, out);
      return kExitOk;
    }
    if (*sample) {
      const qclock::ClockParams p = make_params(o);
      const qclock::TickSample s =
          qclock::sample_ticks(p, o.count, o.seed, exec);
      qclock::write_table(qclock::sample_table(p, s), format, out);
      return kExitOk;
    }
    if (*oracle) {
      bool all_pass = true;
      const qclock::Table t = qclock::run_oracle_check(
          qclock::default_oracle_grid(), o.times, exec, &all_pass);
      qclock::write_table(t, format, out);
      return all_pass ? kExitOk : kExitOracleFail;
    }
    throw qclock::ValidationError("no subcommand selected");
  } catch (const qclock::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qclock::WrongVariantError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qclock::SizeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qclock::DegenerateGradientError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const qclock::ClockError& e) {
    // DegenerateProfileError, NumericalError: the computation itself failed.
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
