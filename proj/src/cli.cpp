// Copyright 2026 The Holonomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "holonomy/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "holonomy/gates.hpp"
#include "holonomy/sampling.hpp"
#include "holonomy/solver.hpp"

namespace holonomy::cli {

namespace {

using experiments::SweepResult;
using nlohmann::json;

constexpr unsigned kSimulate = 1u << 0;
constexpr unsigned kSweepBeta = 1u << 1;
constexpr unsigned kOptBeta = 1u << 2;
constexpr unsigned kFreqGrid = 1u << 3;
constexpr unsigned kFreqRatio = 1u << 4;
constexpr unsigned kCzSweep = 1u << 5;
constexpr unsigned kSampleSphere = 1u << 6;
constexpr unsigned kGateRuns = kSimulate | kSweepBeta | kOptBeta | kFreqGrid | kFreqRatio | kCzSweep;
constexpr unsigned kBetaSweeps = kSweepBeta | kCzSweep;
constexpr unsigned kAll = kGateRuns | kSampleSphere;

unsigned bit(Subcommand sub) { return 1u << static_cast<unsigned>(sub); }

using Member = std::variant<double RunConfig::*, std::optional<double> RunConfig::*, std::size_t RunConfig::*,
                            std::string RunConfig::*, std::vector<double> RunConfig::*>;

struct Field {
  const char* key;
  Member member;
  unsigned used_by;
  const char* help;
};

// Flags and config keys share these names.
const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      {"gate", &RunConfig::gate, kGateRuns, "Gate name"},
      {"theta", &RunConfig::theta, kGateRuns, "Polar loop angle"},
      {"phi", &RunConfig::phi, kGateRuns, "Azimuthal loop angle"},
      {"phi-prime", &RunConfig::phi_prime, kGateRuns, "Second-loop azimuth (phase-shift)"},
      {"delta-phi", &RunConfig::delta_phi, kGateRuns, "phi' - phi (phase-shift)"},
      {"beta-over-fi", &RunConfig::beta_over_fi, kSimulate, "Inverse pulse length"},
      {"f1e-over-f0e", &RunConfig::f1e_over_f0e, kSimulate, "Counter-rotating frequency ratio"},
      {"gamma-over-fi", &RunConfig::gamma_over_fi, kSimulate | kBetaSweeps | kOptBeta, "Decay rates"},
      {"beta-min", &RunConfig::beta_min, kBetaSweeps | kOptBeta, "Smallest beta/f_i"},
      {"beta-max", &RunConfig::beta_max, kBetaSweeps | kOptBeta, "Largest beta/f_i"},
      {"beta-points", &RunConfig::beta_points, kBetaSweeps | kOptBeta, "Number of beta values"},
      {"gamma-over-beta", &RunConfig::gamma_over_beta, kFreqGrid | kFreqRatio, "Decay rate"},
      {"f-min", &RunConfig::f_min, kFreqGrid, "Smallest f/beta"},
      {"f-max", &RunConfig::f_max, kFreqGrid, "Largest f/beta"},
      {"f-points", &RunConfig::f_points, kFreqGrid, "Grid points per axis"},
      {"f0e-over-beta", &RunConfig::f0e_over_beta, kFreqRatio, "Fixed f0e/beta"},
      {"ratio-min", &RunConfig::ratio_min, kFreqRatio, "Smallest f1e/f0e"},
      {"ratio-max", &RunConfig::ratio_max, kFreqRatio, "Largest f1e/f0e"},
      {"ratio-points", &RunConfig::ratio_points, kFreqRatio, "Number of ratios"},
      {"dt-over-beta", &RunConfig::dt_over_beta, kGateRuns, "Pulse spacing times beta"},
      {"n-states", &RunConfig::n_states, kGateRuns, "Sampled input states"},
      {"n-points", &RunConfig::n_points, kSampleSphere, "Number of sphere nodes"},
      {"rel-tol", &RunConfig::rel_tol, kGateRuns, "Integrator relative tolerance"},
      {"abs-tol", &RunConfig::abs_tol, kGateRuns, "Integrator absolute tolerance"},
      {"workers", &RunConfig::workers, kGateRuns, "Worker threads"},
      {"output", &RunConfig::output, kAll, "CSV output path (stdout if empty)"},
      {"svg", &RunConfig::svg, kBetaSweeps | kFreqRatio, "SVG plot path"},
      {"ridge", &RunConfig::ridge, kFreqGrid, "CSV path for the ridge"},
  };
  return table;
}

const Field* find_field(const std::string& key, Subcommand sub) {
  for (const auto& f : fields()) {
    if (key == f.key && (f.used_by & bit(sub))) return &f;
  }
  return nullptr;
}

std::unique_ptr<CLI::App> build_app(Subcommand sub, RunConfig& cfg, std::string* config_path) {
  auto app = std::make_unique<CLI::App>("", "holonomy " + to_string(sub));
  app->allow_windows_style_options(false);
  for (const auto& f : fields()) {
    if (!(f.used_by & bit(sub))) continue;
    std::string name = std::string("--") + f.key;
    if (name == "--output") name = "-o,--output";
    if (name == "--n-points") name = "-n,--n,--n-points";
    std::visit([&](auto member) { app->add_option(name, cfg.*member, f.help); }, f.member);
  }
  if (config_path != nullptr) app->add_option("--config", *config_path, "Flat JSON file of flag values");
  return app;
}

// Reversed token list for CLI::App::parse.
void parse_tokens(CLI::App& app, std::vector<std::string> tokens) {
  std::reverse(tokens.begin(), tokens.end());
  app.parse(tokens);
}

std::string json_scalar(const json& value, const std::string& key) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return value.dump();
  if (value.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value.get<double>());
    return buf;
  }
  throw CliError(kExitUsage, "config key '" + key + "': expected a number or string");
}

void apply_config_file(const std::string& path, Subcommand sub, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitIo, "cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw CliError(kExitUsage, "config file '" + path + "': " + e.what());
  }
  if (!doc.is_object()) throw CliError(kExitUsage, "config file '" + path + "' must hold a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (find_field(key, sub) == nullptr) {
      throw CliError(kExitUsage, "config key '" + key + "' is not valid for " + to_string(sub));
    }
    std::vector<std::string> tokens{"--" + key};
    if (value.is_array()) {
      if (value.empty()) throw CliError(kExitUsage, "config key '" + key + "': empty list");
      for (const auto& item : value) tokens.push_back(json_scalar(item, key));
    } else {
      tokens.push_back(json_scalar(value, key));
    }
    auto app = build_app(sub, cfg, nullptr);
    try {
      parse_tokens(*app, tokens);
    } catch (const CLI::ParseError& e) {
      throw CliError(kExitUsage, "config key '" + key + "': " + e.what());
    }
  }
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw CliError(kExitUsage, "--" + key + ": " + what);
}

void validate(const RunConfig& cfg) {
  const unsigned b = bit(cfg.subcommand);
  if (b & kGateRuns) {
    require(!cfg.gate.empty(), "gate", "required");
    require(cfg.dt_over_beta > 0.0, "dt-over-beta", "must be positive");
    require(cfg.n_states >= 1, "n-states", "must be at least 1");
    require(cfg.rel_tol > 0.0, "rel-tol", "must be positive");
    require(cfg.abs_tol > 0.0, "abs-tol", "must be positive");
    require(cfg.workers >= 1, "workers", "must be at least 1");
  }
  if (b & (kSimulate | kBetaSweeps | kOptBeta)) {
    require(!cfg.gamma_over_fi.empty(), "gamma-over-fi", "needs at least one value");
    for (double g : cfg.gamma_over_fi) require(g >= 0.0 && std::isfinite(g), "gamma-over-fi", "must be >= 0");
  }
  if (b & kSimulate) {
    require(cfg.beta_over_fi > 0.0, "beta-over-fi", "must be positive");
    require(cfg.f1e_over_f0e > 0.0, "f1e-over-f0e", "must be positive");
  }
  if (b & (kBetaSweeps | kOptBeta)) {
    require(cfg.beta_min > 0.0, "beta-min", "must be positive");
    require(cfg.beta_max >= cfg.beta_min, "beta-max", "must not be below beta-min");
    require(cfg.beta_points >= 1, "beta-points", "must be at least 1");
  }
  if (b & kOptBeta) {
    require(cfg.beta_max > cfg.beta_min, "beta-max", "must exceed beta-min");
    require(cfg.beta_points >= 2, "beta-points", "must be at least 2");
  }
  if (b & (kFreqGrid | kFreqRatio)) require(cfg.gamma_over_beta >= 0.0, "gamma-over-beta", "must be >= 0");
  if (b & kFreqGrid) {
    require(cfg.f_min > 0.0, "f-min", "must be positive");
    require(cfg.f_max >= cfg.f_min, "f-max", "must not be below f-min");
    require(cfg.f_points >= 1, "f-points", "must be at least 1");
  }
  if (b & kFreqRatio) {
    require(cfg.f0e_over_beta > 0.0, "f0e-over-beta", "must be positive");
    require(cfg.ratio_min > 0.0, "ratio-min", "must be positive");
    require(cfg.ratio_max >= cfg.ratio_min, "ratio-max", "must not be below ratio-min");
    require(cfg.ratio_points >= 1, "ratio-points", "must be at least 1");
  }
  if (b & kSampleSphere) require(cfg.n_points >= 1, "n-points", "must be at least 1");
}

std::size_t default_workers() {
  if (const char* env = std::getenv("HOLONOMY_WORKERS"); env != nullptr && *env != '\0') {
    std::size_t n = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, n);
    if (ec == std::errc() && ptr == end && n >= 1) return n;
    throw CliError(kExitUsage, "HOLONOMY_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// --- SVG ---------------------------------------------------------------

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 50.0;

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double fraction(double v) const {
    if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
    return (v - lo) / (hi - lo);
  }
};

Axis make_axis(const std::vector<double>& values, bool log) {
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  Axis axis;
  axis.log = log;
  if (log) {
    axis.lo = std::pow(10.0, std::floor(std::log10(lo)));
    axis.hi = std::pow(10.0, std::ceil(std::log10(hi)));
    if (axis.hi <= axis.lo) axis.hi = axis.lo * 10.0;
  } else {
    if (hi <= lo) {
      const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= pad;
      hi += pad;
    }
    axis.lo = lo;
    axis.hi = hi;
  }
  return axis;
}

std::vector<std::pair<double, std::string>> ticks(const Axis& axis) {
  std::vector<std::pair<double, std::string>> out;
  char buf[32];
  if (axis.log) {
    const int first = static_cast<int>(std::lround(std::log10(axis.lo)));
    const int last = static_cast<int>(std::lround(std::log10(axis.hi)));
    for (int k = first; k <= last; ++k) {
      std::snprintf(buf, sizeof buf, "1e%d", k);
      out.emplace_back(std::pow(10.0, k), buf);
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double v = axis.lo + (axis.hi - axis.lo) * i / 4.0;
      std::snprintf(buf, sizeof buf, "%.3g", v);
      out.emplace_back(v, buf);
    }
  }
  return out;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw CliError(kExitIo, "cannot write '" + path + "'");
  return file;
}

void write_file(const std::string& path, const std::string& text) {
  auto file = open_output(path);
  file << text;
  file.flush();
  if (!file) throw CliError(kExitIo, "failed writing '" + path + "'");
}

}  // namespace

// --- subcommands -----------------------------------------------------------

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"simulate",   "sweep-beta", "opt-beta",     "freq-grid",
                                              "freq-ratio", "cz-sweep",   "sample-sphere"};
  return names;
}

std::string to_string(Subcommand sub) { return subcommand_names().at(static_cast<std::size_t>(sub)); }

Subcommand parse_subcommand(const std::string& name) {
  const auto& names = subcommand_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<Subcommand>(i);
  }
  std::string list;
  for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
  throw CliError(kExitUsage, "unknown subcommand '" + name + "' (expected one of " + list + ")");
}

RunConfig default_config(Subcommand sub) {
  RunConfig cfg;
  cfg.subcommand = sub;
  cfg.workers = default_workers();
  switch (sub) {
    case Subcommand::kOptBeta:
      cfg.beta_min = 0.03;
      cfg.beta_max = 0.3;
      cfg.beta_points = 100;
      break;
    case Subcommand::kFreqRatio:
      cfg.gamma_over_beta = 1e-3;
      cfg.dt_over_beta = 20.0;
      break;
    case Subcommand::kCzSweep:
      cfg.gate = "CZ";
      break;
    default:
      break;
  }
  return cfg;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  if (args.empty()) throw CliError(kExitUsage, "missing subcommand");
  const Subcommand sub = parse_subcommand(args.front());
  RunConfig cfg = default_config(sub);
  const std::vector<std::string> rest(args.begin() + 1, args.end());

  // First pass only to locate --config; values land in a scratch copy.
  std::string config_path;
  {
    RunConfig scratch = cfg;
    auto app = build_app(sub, scratch, &config_path);
    try {
      parse_tokens(*app, rest);
    } catch (const CLI::CallForHelp&) {
      throw;
    } catch (const CLI::ParseError& e) {
      throw CliError(kExitUsage, e.what());
    }
  }
  if (!config_path.empty()) apply_config_file(config_path, sub, cfg);

  std::string ignored;
  auto app = build_app(sub, cfg, &ignored);
  try {
    parse_tokens(*app, rest);
  } catch (const CLI::ParseError& e) {
    throw CliError(kExitUsage, e.what());
  }
  validate(cfg);
  return cfg;
}

std::string emit_config(const RunConfig& config) {
  json doc = json::object();
  for (const auto& f : fields()) {
    if (!(f.used_by & bit(config.subcommand))) continue;
    std::visit(
        [&](auto member) {
          const auto& value = config.*member;
          using V = std::decay_t<decltype(value)>;
          if constexpr (std::is_same_v<V, std::optional<double>>) {
            if (value) doc[f.key] = *value;
          } else if constexpr (std::is_same_v<V, std::string>) {
            if (!value.empty()) doc[f.key] = value;
          } else {
            doc[f.key] = value;
          }
        },
        f.member);
  }
  return doc.dump(2) + "\n";
}

// --- CSV -------------------------------------------------------------------

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific);
  if (ec != std::errc()) throw std::runtime_error("format_number: conversion failed");
  const std::string text(buf, end);
  const auto epos = text.find('e');
  std::string mantissa = text.substr(0, epos);
  if (mantissa.find('.') == std::string::npos) mantissa += ".0";
  const int exponent = std::stoi(text.substr(epos + 1));
  return mantissa + "e" + std::to_string(exponent);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) out += (i ? "," : "") + table.header[i];
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const Table& table, const std::string& path, std::ostream* fallback) {
  if (table.rows.empty()) throw CliError(kExitIo, "refusing to write an empty result");
  const std::string text = to_csv(table);
  if (path.empty()) {
    if (fallback == nullptr) throw CliError(kExitIo, "no output path");
    *fallback << text;
    return;
  }
  write_file(path, text);
}

Table beta_sweep_table(const SweepResult& result) {
  Table t{{"beta_over_fi", "gamma_over_fi", "mean_inf", "min_inf", "max_inf", "rwa_mean_inf"}, {}};
  for (std::size_t iy = 0; iy < result.series(); ++iy) {
    const double gamma = result.y.empty() ? 0.0 : result.y[iy];
    for (std::size_t ix = 0; ix < result.x.size(); ++ix) {
      const auto& s = result.full[result.index(ix, iy)];
      const double rwa = result.rwa.empty() ? std::nan("") : result.rwa[result.index(ix, iy)].mean_infidelity();
      t.rows.push_back({result.x[ix], gamma, s.mean_infidelity(), s.min_infidelity(), s.max_infidelity(), rwa});
    }
  }
  return t;
}

Table frequency_grid_table(const SweepResult& result) {
  Table t{{"f0e_over_beta", "f1e_over_beta", "mean_inf"}, {}};
  for (std::size_t iy = 0; iy < result.y.size(); ++iy) {
    for (std::size_t ix = 0; ix < result.x.size(); ++ix) {
      t.rows.push_back({result.x[ix], result.y[iy], result.full[result.index(ix, iy)].mean_infidelity()});
    }
  }
  return t;
}

Table ridge_table(const std::vector<experiments::RidgePoint>& ridge) {
  Table t{{"f0e_over_beta", "f1e_over_beta", "mean_inf"}, {}};
  for (const auto& p : ridge) t.rows.push_back({p.f0e, p.f1e, p.infidelity});
  return t;
}

Table frequency_ratio_table(const SweepResult& result) {
  Table t{{"f1e_over_f0e", "mean_inf", "min_inf", "max_inf"}, {}};
  for (std::size_t ix = 0; ix < result.x.size(); ++ix) {
    const auto& s = result.full[ix];
    t.rows.push_back({result.x[ix], s.mean_infidelity(), s.min_infidelity(), s.max_infidelity()});
  }
  return t;
}

// --- SVG -------------------------------------------------------------------

std::string to_svg(const SweepResult& result) {
  if (result.grid) throw CliError(kExitUsage, "two-dimensional grids can only be exported as CSV");
  if (result.empty() || result.x.empty()) throw CliError(kExitIo, "refusing to plot an empty result");

  struct Curve {
    std::string label;
    std::vector<double> y;
    bool dashed;
  };
  std::vector<Curve> curves;
  for (std::size_t iy = 0; iy < result.series(); ++iy) {
    std::string label = "full";
    if (!result.y.empty()) label += " " + result.y_name + "=" + format_number(result.y[iy]);
    Curve full{label, {}, false};
    Curve rwa{"RWA" + label.substr(4), {}, true};
    for (std::size_t ix = 0; ix < result.x.size(); ++ix) {
      full.y.push_back(result.full[result.index(ix, iy)].mean_infidelity());
      if (!result.rwa.empty()) rwa.y.push_back(result.rwa[result.index(ix, iy)].mean_infidelity());
    }
    curves.push_back(std::move(full));
    if (!result.rwa.empty()) curves.push_back(std::move(rwa));
  }

  std::vector<double> all_y;
  for (const auto& c : curves) all_y.insert(all_y.end(), c.y.begin(), c.y.end());
  const double ymin = *std::min_element(all_y.begin(), all_y.end());
  const double ymax = *std::max_element(all_y.begin(), all_y.end());
  const Axis xa = make_axis(result.x, experiments::is_log_spaced(result.x));
  const Axis ya = make_axis(all_y, ymin > 0.0 && ymax >= 10.0 * ymin);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + pw * xa.fraction(v); };
  auto py = [&](double v) { return kTop + ph * (1.0 - ya.fraction(v)); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << coord(pw) << "\" height=\"" << coord(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& [v, label] : ticks(xa)) {
    const std::string x = coord(px(v));
    svg << "<line x1=\"" << x << "\" y1=\"" << coord(kTop + ph) << "\" x2=\"" << x << "\" y2=\""
        << coord(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    svg << "<text class=\"xtick\" x=\"" << x << "\" y=\"" << coord(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << label << "</text>\n";
  }
  for (const auto& [v, label] : ticks(ya)) {
    const std::string y = coord(py(v));
    svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n";
    svg << "<text class=\"ytick\" x=\"" << coord(kLeft - 8) << "\" y=\"" << y
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << label << "</text>\n";
  }
  svg << "<text x=\"" << coord(kLeft + pw / 2) << "\" y=\"" << coord(kHeight - 10) << "\" text-anchor=\"middle\">"
      << result.x_name << "</text>\n";
  svg << "<text x=\"15\" y=\"" << coord(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
      << coord(kTop + ph / 2) << ")\">mean infidelity</text>\n";

  for (std::size_t c = 0; c < curves.size(); ++c) {
    const char* color = colors[(c / (result.rwa.empty() ? 1 : 2)) % std::size(colors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\"" << (curves[c].dashed ? " stroke-dasharray=\"4 3\"" : "")
        << " points=\"";
    for (std::size_t i = 0; i < result.x.size(); ++i) {
      svg << (i ? " " : "") << coord(px(result.x[i])) << "," << coord(py(curves[c].y[i]));
    }
    svg << "\"/>\n";
    svg << "<text x=\"" << coord(kLeft + pw - 5) << "\" y=\"" << coord(kTop + 14 + 14 * static_cast<double>(c))
        << "\" text-anchor=\"end\" fill=\"" << color << "\">" << curves[c].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_svg(const SweepResult& result, const std::string& path) { write_file(path, to_svg(result)); }

// --- dispatch ----------------------------------------------------------------

void execute(const RunConfig& cfg, std::ostream& out) {
  validate(cfg);
  if (cfg.subcommand == Subcommand::kSampleSphere) {
    Table t{{"x", "y", "z"}, {}};
    for (const auto& p : sampling::fibonacci_nodes(cfg.n_points).points) t.rows.push_back({p[0], p[1], p[2]});
    emit_csv(t, cfg.output, &out);
    return;
  }

  gates::GateParams params{cfg.theta, cfg.phi, cfg.phi_prime, cfg.delta_phi};
  gates::GateSpec gate;
  try {
    gate = gates::catalog(cfg.gate, params);
  } catch (const std::invalid_argument& e) {
    throw CliError(kExitUsage, std::string("--gate: ") + e.what());
  }
  if (cfg.subcommand == Subcommand::kCzSweep && !gate.is_two_qubit()) {
    throw CliError(kExitUsage, "--gate: cz-sweep needs a two-qubit gate");
  }

  experiments::ExperimentOptions opts;
  opts.n_states = cfg.n_states;
  opts.dt_over_beta = cfg.dt_over_beta;
  opts.integrator.rel_tol = cfg.rel_tol;
  opts.integrator.abs_tol = cfg.abs_tol;
  opts.workers = cfg.workers;

  switch (cfg.subcommand) {
    case Subcommand::kSimulate: {
      Table t{{"beta_over_fi", "gamma_over_fi", "f1e_over_f0e", "mean_inf", "min_inf", "max_inf", "rwa_mean_inf"},
              {}};
      for (double gamma : cfg.gamma_over_fi) {
        const model::DriveConfig full{.f0e = 1.0, .f1e = cfg.f1e_over_f0e, .gamma = gamma, .rwa = false};
        model::DriveConfig rwa = full;
        rwa.rwa = true;
        const auto s = experiments::average_fidelity(gate, full, cfg.beta_over_fi, opts);
        const auto r = experiments::average_fidelity(gate, rwa, cfg.beta_over_fi, opts);
        t.rows.push_back({cfg.beta_over_fi, gamma, cfg.f1e_over_f0e, s.mean_infidelity(), s.min_infidelity(),
                          s.max_infidelity(), r.mean_infidelity()});
      }
      emit_csv(t, cfg.output, &out);
      break;
    }
    case Subcommand::kSweepBeta:
    case Subcommand::kCzSweep: {
      const auto betas = experiments::logspace(cfg.beta_min, cfg.beta_max, cfg.beta_points);
      const auto result = experiments::sweep_beta(gate, cfg.gamma_over_fi, betas, opts);
      emit_csv(beta_sweep_table(result), cfg.output, &out);
      if (!cfg.svg.empty()) emit_svg(result, cfg.svg);
      break;
    }
    case Subcommand::kOptBeta: {
      Table t{{"gamma_over_fi", "beta_opt_over_fi", "mean_inf"}, {}};
      for (double gamma : cfg.gamma_over_fi) {
        const auto best = experiments::find_beta_opt(gate, gamma, cfg.beta_min, cfg.beta_max, cfg.beta_points, opts);
        t.rows.push_back({gamma, best.beta, best.infidelity});
      }
      emit_csv(t, cfg.output, &out);
      break;
    }
    case Subcommand::kFreqGrid: {
      const auto f = experiments::linspace(cfg.f_min, cfg.f_max, cfg.f_points);
      const auto result = experiments::frequency_grid(gate, f, f, cfg.gamma_over_beta, opts);
      emit_csv(frequency_grid_table(result.grid), cfg.output, &out);
      if (!cfg.ridge.empty()) emit_csv(ridge_table(result.ridge), cfg.ridge);
      break;
    }
    case Subcommand::kFreqRatio: {
      const auto ratios = experiments::logspace(cfg.ratio_min, cfg.ratio_max, cfg.ratio_points);
      const auto result =
          experiments::frequency_ratio_sweep(gate, ratios, cfg.f0e_over_beta, cfg.gamma_over_beta, opts);
      emit_csv(frequency_ratio_table(result), cfg.output, &out);
      if (!cfg.svg.empty()) emit_svg(result, cfg.svg);
      break;
    }
    case Subcommand::kSampleSphere:
      break;
  }
}

namespace {

int exit_code_for(const std::exception_ptr& error, std::string& message) {
  try {
    std::rethrow_exception(error);
  } catch (const CliError& e) {
    message = e.what();
    return e.code();
  } catch (const experiments::PointError& e) {
    std::string inner;
    const int code = exit_code_for(e.cause(), inner);
    message = e.what();
    return code;
  } catch (const solver::NumericalError& e) {
    message = e.what();
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    message = e.what();
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    message = e.what();
    return kExitIo;
  } catch (const std::exception& e) {
    message = e.what();
    return kExitNumerical;
  }
}

std::string usage() {
  std::string text = "usage: holonomy <subcommand> [options]\n\nsubcommands:\n";
  for (const auto& n : subcommand_names()) text += "  " + n + "\n";
  text += "\nRun 'holonomy <subcommand> --help' for the options of a subcommand.\n";
  return text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  if (args.empty()) {
    err << usage();
    return kExitUsage;
  }
  if (args.front() == "--help" || args.front() == "-h") {
    out << usage();
    return kExitOk;
  }
  try {
    const RunConfig cfg = parse_config(args);
    execute(cfg, out);
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    RunConfig scratch = default_config(parse_subcommand(args.front()));
    std::string path;
    out << build_app(scratch.subcommand, scratch, &path)->help();
    return kExitOk;
  } catch (...) {
    std::string message;
    const int code = exit_code_for(std::current_exception(), message);
    err << "holonomy: " << message << "\n";
    return code;
  }
}

}  // namespace holonomy::cli
