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


// Batch front-end: run configuration, dispatch and CSV / SVG output.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holonomy/experiments.hpp"

namespace holonomy::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitNumerical = 4,
};

/// Error carrying the process exit code it maps to.
class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& message) : std::runtime_error(message), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

enum class Subcommand {
  kSimulate,
  kSweepBeta,
  kOptBeta,
  kFreqGrid,
  kFreqRatio,
  kCzSweep,
  kSampleSphere,
};

const std::vector<std::string>& subcommand_names();
std::string to_string(Subcommand sub);
/// Throws CliError(kExitUsage) for unknown names.
Subcommand parse_subcommand(const std::string& name);

struct RunConfig {
  Subcommand subcommand = Subcommand::kSimulate;

  std::string gate;
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<double> phi_prime;
  std::optional<double> delta_phi;

  // simulate
  double beta_over_fi = 0.1;
  double f1e_over_f0e = 1.0;
  // beta sweeps, opt-beta, simulate
  std::vector<double> gamma_over_fi{1e-3};
  double beta_min = 1e-2;
  double beta_max = 1.0;
  std::size_t beta_points = 40;
  // frequency studies
  double gamma_over_beta = 0.02;
  double f_min = 1.0;
  double f_max = 20.0;
  std::size_t f_points = 30;
  double f0e_over_beta = 10.0;
  double ratio_min = 0.1;
  double ratio_max = 10.0;
  std::size_t ratio_points = 50;

  double dt_over_beta = 10.0;
  std::size_t n_states = 100;
  std::size_t n_points = 100;
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  std::size_t workers = 1;

  std::string output;
  std::string svg;
  std::string ridge;

  bool operator==(const RunConfig&) const = default;
};

/// Defaults for a subcommand. `workers` comes from HOLONOMY_WORKERS when set,
/// otherwise from the hardware concurrency.
RunConfig default_config(Subcommand sub);

/// Parses `subcommand [flags]`. A `--config file.json` holds a flat object
/// whose keys are flag names without the leading dashes; flags given on the
/// command line win over the file. Throws CliError.
RunConfig parse_config(const std::vector<std::string>& args);

/// JSON text accepted by `--config` that reproduces `config`.
std::string emit_config(const RunConfig& config);

/// Header plus rows, written as CSV.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Shortest round-trip scientific form with a mandatory fraction digit:
/// 0.1 -> "1.0e-1", 2.5 -> "2.5e0".
std::string format_number(double value);

std::string to_csv(const Table& table);
/// Writes the table to `path`, or to `fallback` when the path is empty.
/// Throws CliError(kExitIo) on empty tables or unwritable paths.
void emit_csv(const Table& table, const std::string& path, std::ostream* fallback = nullptr);

/// beta_over_fi,gamma_over_fi,mean_inf,min_inf,max_inf,rwa_mean_inf
Table beta_sweep_table(const experiments::SweepResult& result);
/// f0e_over_beta,f1e_over_beta,mean_inf
Table frequency_grid_table(const experiments::SweepResult& result);
/// f0e_over_beta,f1e_over_beta,mean_inf for the ridge points
Table ridge_table(const std::vector<experiments::RidgePoint>& ridge);
/// f1e_over_f0e,mean_inf,min_inf,max_inf
Table frequency_ratio_table(const experiments::SweepResult& result);

/// Line plot of a one-dimensional sweep: one polyline per curve. Axes are
/// logarithmic when the values are log-spaced (x) or span a decade (y).
/// Throws CliError(kExitUsage) for grid results.
std::string to_svg(const experiments::SweepResult& result);
void emit_svg(const experiments::SweepResult& result, const std::string& path);

/// Runs one configuration, writing CSV to `out` when no output path is set.
void execute(const RunConfig& config, std::ostream& out);

/// Full entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace holonomy::cli
