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

// Gate fidelity and the parameter studies built on it.
//
// Everything is expressed in dimensionless ratios. The beta sweeps measure
// time in units of 1/f_i (f0e = f1e = 1); the frequency studies measure it in
// units of 1/beta (beta = 1).

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "holonomy/gates.hpp"
#include "holonomy/model.hpp"
#include "holonomy/parallel.hpp"
#include "holonomy/solver.hpp"

namespace holonomy::experiments {

using linalg::ComplexMatrix;

struct FidelityStats {
  double mean = 1.0;
  double min = 1.0;
  double max = 1.0;
  std::size_t n_states = 0;

  static FidelityStats from_samples(std::span<const double> fidelities);

  double mean_infidelity() const { return 1.0 - mean; }
  double min_infidelity() const { return 1.0 - max; }
  double max_infidelity() const { return 1.0 - min; }
};

/// How sampled input states are pushed through the protocol.
enum class InputPropagation {
  /// Propagate the four qubit states |0>, |1>, |+>, |+i> and rebuild every
  /// sampled output from the linearity of the channel (single-qubit gates).
  kBasis,
  /// One trajectory per sampled input.
  kPerState,
};

struct ExperimentOptions {
  std::size_t n_states = 100;
  /// Pulse spacing of multi-loop gates, in units of 1/beta.
  double dt_over_beta = 10.0;
  solver::IntegratorSettings integrator;
  InputPropagation propagation = InputPropagation::kBasis;
  std::size_t workers = 1;
};

/// Re <psi0| U^+ rho U |psi0>, clamped to [0, 1 + 1e-9].
double gate_fidelity(const ComplexMatrix& rho_final, const ComplexMatrix& ideal_embedded,
                     std::span<const Complex> psi0);

/// Input states used for a gate: Fibonacci nodes for single-qubit gates, the
/// four |+-+-> products for two-qubit gates.
std::vector<linalg::StateVector> input_states(const gates::GateSpec& gate, std::size_t n_states);

/// Runs the gate protocol with inverse pulse length `beta` under `drive` and
/// averages gate_fidelity over the input states.
FidelityStats average_fidelity(const gates::GateSpec& gate, const model::DriveConfig& drive,
                               double beta, const ExperimentOptions& opts);

/// Final state of one input state under the gate protocol.
solver::DensityMatrix run_gate(const gates::GateSpec& gate, const model::DriveConfig& drive, double beta,
                               const solver::DensityMatrix& rho0, const ExperimentOptions& opts);

/// Sweep output. `x` is the swept axis; `y` is either a family parameter
/// (one curve per value) or, when `grid` is set, the second grid axis. An
/// empty `y` means a single curve. Point (ix, iy) is stored at iy*x.size()+ix.
struct SweepResult {
  std::string x_name;
  std::vector<double> x;
  std::string y_name;
  std::vector<double> y;
  bool grid = false;
  std::vector<FidelityStats> full;
  /// Same gate with the rotating-wave Hamiltonian; empty when not computed.
  std::vector<FidelityStats> rwa;

  std::size_t series() const { return y.empty() ? 1 : y.size(); }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * x.size() + ix; }
  bool empty() const { return full.empty(); }
  /// Throws std::invalid_argument on non-monotone axes or size mismatches.
  void validate() const;
};

std::vector<double> linspace(double lo, double hi, std::size_t n);
std::vector<double> logspace(double lo, double hi, std::size_t n);
/// True when the values are a geometric progression (within 1e-9 relative).
bool is_log_spaced(std::span<const double> values);

/// Mean infidelity against beta/f_i with f0e = f1e = f_i, for every gamma/f_i,
/// with the rotating-wave reference at the same decay.
SweepResult sweep_beta(const gates::GateSpec& gate, const std::vector<double>& gamma_over_fi,
                       const std::vector<double>& beta_over_fi, const ExperimentOptions& opts);

struct BetaOptimum {
  double beta = 0.0;
  double infidelity = 0.0;
};

/// Grid search of `objective` on n_points evenly spaced values in [lo, hi].
/// Ties go to the smaller beta.
BetaOptimum find_beta_opt(const std::function<double(double)>& objective, double lo, double hi,
                          std::size_t n_points, std::size_t workers = 1);

/// Inverse pulse length (in units of f_i) minimising the full-model mean infidelity.
BetaOptimum find_beta_opt(const gates::GateSpec& gate, double gamma_over_fi, double lo, double hi,
                          std::size_t n_points, const ExperimentOptions& opts);

struct RidgePoint {
  double f0e = 0.0;
  double f1e = 0.0;
  double infidelity = 0.0;
};

struct FrequencyGrid {
  SweepResult grid;
  /// For each f0e column, the f1e with the lowest mean infidelity.
  std::vector<RidgePoint> ridge;
};

/// Mean infidelity on the (f0e/beta, f1e/beta) grid at fixed gamma/beta.
FrequencyGrid frequency_grid(const gates::GateSpec& gate, const std::vector<double>& f0e_over_beta,
                             const std::vector<double>& f1e_over_beta, double gamma_over_beta,
                             const ExperimentOptions& opts);

/// Mean infidelity against f1e/f0e with f0e/beta fixed.
SweepResult frequency_ratio_sweep(const gates::GateSpec& gate, const std::vector<double>& ratios,
                                  double f0e_over_beta, double gamma_over_beta,
                                  const ExperimentOptions& opts);

/// 1 - mean |<psi|U|psi>|^2 over the gate's input states: the infidelity of a
/// protocol that leaves every input untouched.
double asymptotic_infidelity(const gates::GateSpec& gate, std::size_t n_states);

}  // namespace holonomy::experiments
