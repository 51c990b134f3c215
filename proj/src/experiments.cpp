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

#include "holonomy/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holonomy/sampling.hpp"

namespace holonomy::experiments {

namespace {

// One simulation: a gate at given beta and drive.
struct Task {
  double beta;
  model::DriveConfig drive;
};

std::vector<FidelityStats> evaluate(const gates::GateSpec& gate, const std::vector<Task>& tasks,
                                    const ExperimentOptions& opts) {
  return parallel_map(
      tasks, [&](const Task& task) { return average_fidelity(gate, task.drive, task.beta, opts); },
      opts.workers);
}

void require_monotone(const std::vector<double>& axis, const std::string& name) {
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (!(axis[i] > axis[i - 1])) {
      throw std::invalid_argument("axis '" + name + "' must be strictly increasing");
    }
  }
}

void require_positive(const std::vector<double>& values, const std::string& name) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("'" + name + "' values must be positive");
    }
  }
}

// Qubit states whose outputs span every single-qubit output by linearity.
struct BasisOutputs {
  ComplexMatrix zero;   // |0>
  ComplexMatrix one;    // |1>
  ComplexMatrix plus;   // |+>
  ComplexMatrix plus_i; // |+i>
};

}  // namespace

FidelityStats FidelityStats::from_samples(std::span<const double> fidelities) {
  if (fidelities.empty()) throw std::invalid_argument("FidelityStats: no samples");
  FidelityStats s;
  double sum = 0.0;
  s.min = fidelities.front();
  s.max = fidelities.front();
  for (double f : fidelities) {
    sum += f;
    s.min = std::min(s.min, f);
    s.max = std::max(s.max, f);
  }
  s.n_states = fidelities.size();
  s.mean = std::clamp(sum / static_cast<double>(fidelities.size()), s.min, s.max);
  return s;
}

double gate_fidelity(const ComplexMatrix& rho_final, const ComplexMatrix& ideal_embedded,
                     std::span<const Complex> psi0) {
  const linalg::StateVector target = linalg::apply(ideal_embedded, psi0);
  const linalg::StateVector rho_target = linalg::apply(rho_final, target);
  const double f = linalg::inner(target, rho_target).real();
  return std::clamp(f, 0.0, 1.0 + 1e-9);
}

std::vector<linalg::StateVector> input_states(const gates::GateSpec& gate, std::size_t n_states) {
  if (gate.is_two_qubit()) return sampling::two_qubit_inputs();
  std::vector<linalg::StateVector> out;
  for (const auto& p : sampling::fibonacci_nodes(n_states).points) {
    out.push_back(sampling::bloch_to_state(p));
  }
  return out;
}

solver::DensityMatrix run_gate(const gates::GateSpec& gate, const model::DriveConfig& drive, double beta,
                               const solver::DensityMatrix& rho0, const ExperimentOptions& opts) {
  if (const auto* two = std::get_if<gates::TwoQubit>(&gate.variant)) {
    model::TwoQubitConfig cfg;
    cfg.theta = two->theta;
    cfg.phi = two->phi;
    cfg.f0e = drive.f0e;
    cfg.f1e = drive.f1e;
    cfg.gamma = drive.gamma;
    cfg.rwa = drive.rwa;
    cfg.pulse = model::PulseShape::starting_at(beta, 0.0);
    return solver::run_protocol(rho0, cfg, opts.integrator);
  }
  const auto sequence = model::PulseSequence::uniform(gate.loops(), beta, opts.dt_over_beta / beta);
  return solver::run_protocol(rho0, sequence, drive, opts.integrator);
}

FidelityStats average_fidelity(const gates::GateSpec& gate, const model::DriveConfig& drive,
                               double beta, const ExperimentOptions& opts) {
  if (opts.n_states == 0) throw std::invalid_argument("average_fidelity: n_states must be >= 1");
  const auto states = input_states(gate, opts.n_states);
  const std::size_t dim = gate.is_two_qubit() ? model::kTwoIonLevels : model::kLevels;
  const ComplexMatrix ideal = gates::embed_qubit_unitary(gates::ideal_unitary(gate), dim);

  std::vector<double> fidelities;
  fidelities.reserve(states.size());

  if (gate.is_two_qubit() || opts.propagation == InputPropagation::kPerState) {
    for (const auto& psi : states) {
      const auto rho = run_gate(gate, drive, beta, solver::DensityMatrix::pure(psi), opts);
      fidelities.push_back(gate_fidelity(rho.matrix(), ideal, psi));
    }
    return FidelityStats::from_samples(fidelities);
  }

  const double h = std::numbers::sqrt2 / 2.0;
  auto propagate = [&](Complex a0, Complex a1) {
    linalg::StateVector psi(model::kLevels);
    psi[model::kLevel0] = a0;
    psi[model::kLevel1] = a1;
    return run_gate(gate, drive, beta, solver::DensityMatrix::pure(psi), opts).matrix();
  };
  const BasisOutputs out{propagate(1.0, 0.0), propagate(0.0, 1.0), propagate(h, h),
                         propagate(h, Complex(0.0, h))};

  for (const auto& psi : states) {
    // rho = (I + x X + y Y + z Z)/2 written over |0>,|1>,|+>,|+i> projectors.
    const Complex c0 = psi[model::kLevel0];
    const Complex c1 = psi[model::kLevel1];
    const Complex coh = std::conj(c0) * c1;
    const double x = 2.0 * coh.real();
    const double y = 2.0 * coh.imag();
    const double z = std::norm(c0) - std::norm(c1);
    ComplexMatrix rho = Complex(x) * out.plus;
    rho.add_scaled(out.plus_i, y);
    rho.add_scaled(out.zero, 0.5 * (1.0 + z - x - y));
    rho.add_scaled(out.one, 0.5 * (1.0 - z - x - y));
    fidelities.push_back(gate_fidelity(rho, ideal, psi));
  }
  return FidelityStats::from_samples(fidelities);
}

void SweepResult::validate() const {
  require_monotone(x, x_name);
  require_monotone(y, y_name);
  if (x.empty()) throw std::invalid_argument("SweepResult: empty axis");
  if (full.size() != x.size() * series()) {
    throw std::invalid_argument("SweepResult: point count does not match axes");
  }
  if (!rwa.empty() && rwa.size() != full.size()) {
    throw std::invalid_argument("SweepResult: reference count does not match axes");
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("logspace: bounds must be positive");
  auto exps = linspace(std::log10(lo), std::log10(hi), n);
  for (auto& e : exps) e = std::pow(10.0, e);
  if (n > 0) exps.front() = lo;
  if (n > 1) exps.back() = hi;
  return exps;
}

bool is_log_spaced(std::span<const double> values) {
  if (values.size() < 3) return false;
  if (values.front() <= 0.0) return false;
  const double ratio = values[1] / values[0];
  if (std::abs(ratio - 1.0) < 1e-12) return false;
  for (std::size_t i = 2; i < values.size(); ++i) {
    if (values[i - 1] <= 0.0 || std::abs(values[i] / values[i - 1] / ratio - 1.0) > 1e-9) return false;
  }
  return true;
}

SweepResult sweep_beta(const gates::GateSpec& gate, const std::vector<double>& gamma_over_fi,
                       const std::vector<double>& beta_over_fi, const ExperimentOptions& opts) {
  require_positive(beta_over_fi, "beta_over_fi");
  require_monotone(beta_over_fi, "beta_over_fi");
  if (gamma_over_fi.empty()) throw std::invalid_argument("sweep_beta: no gamma values");
  for (double g : gamma_over_fi) {
    if (!(g >= 0.0)) throw std::invalid_argument("sweep_beta: gamma_over_fi must be non-negative");
  }

  std::vector<Task> tasks;
  for (bool rwa : {false, true}) {
    for (double gamma : gamma_over_fi) {
      for (double beta : beta_over_fi) tasks.push_back({beta, {1.0, 1.0, gamma, rwa}});
    }
  }
  auto stats = evaluate(gate, tasks, opts);

  SweepResult r;
  r.x_name = "beta_over_fi";
  r.x = beta_over_fi;
  r.y_name = "gamma_over_fi";
  r.y = gamma_over_fi;
  const std::size_t half = stats.size() / 2;
  r.full.assign(stats.begin(), stats.begin() + static_cast<std::ptrdiff_t>(half));
  r.rwa.assign(stats.begin() + static_cast<std::ptrdiff_t>(half), stats.end());
  return r;
}

BetaOptimum find_beta_opt(const std::function<double(double)>& objective, double lo, double hi,
                          std::size_t n_points, std::size_t workers) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("find_beta_opt: need 0 < lo < hi");
  if (n_points < 2) throw std::invalid_argument("find_beta_opt: need at least two grid points");
  const auto grid = linspace(lo, hi, n_points);
  const auto values = parallel_map(grid, [&](double beta) { return objective(beta); }, workers);
  BetaOptimum best{grid[0], values[0]};
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (values[i] < best.infidelity) best = {grid[i], values[i]};
  }
  return best;
}

BetaOptimum find_beta_opt(const gates::GateSpec& gate, double gamma_over_fi, double lo, double hi,
                          std::size_t n_points, const ExperimentOptions& opts) {
  const model::DriveConfig drive{1.0, 1.0, gamma_over_fi, false};
  return find_beta_opt(
      [&](double beta) { return average_fidelity(gate, drive, beta, opts).mean_infidelity(); }, lo, hi,
      n_points, opts.workers);
}

FrequencyGrid frequency_grid(const gates::GateSpec& gate, const std::vector<double>& f0e_over_beta,
                             const std::vector<double>& f1e_over_beta, double gamma_over_beta,
                             const ExperimentOptions& opts) {
  require_positive(f0e_over_beta, "f0e_over_beta");
  require_positive(f1e_over_beta, "f1e_over_beta");
  require_monotone(f0e_over_beta, "f0e_over_beta");
  require_monotone(f1e_over_beta, "f1e_over_beta");

  std::vector<Task> tasks;
  for (double f1 : f1e_over_beta) {
    for (double f0 : f0e_over_beta) tasks.push_back({1.0, {f0, f1, gamma_over_beta, false}});
  }

  FrequencyGrid out;
  out.grid.x_name = "f0e_over_beta";
  out.grid.x = f0e_over_beta;
  out.grid.y_name = "f1e_over_beta";
  out.grid.y = f1e_over_beta;
  out.grid.grid = true;
  out.grid.full = evaluate(gate, tasks, opts);

  for (std::size_t ix = 0; ix < f0e_over_beta.size(); ++ix) {
    RidgePoint best{f0e_over_beta[ix], f1e_over_beta[0],
                    out.grid.full[out.grid.index(ix, 0)].mean_infidelity()};
    for (std::size_t iy = 1; iy < f1e_over_beta.size(); ++iy) {
      const double inf = out.grid.full[out.grid.index(ix, iy)].mean_infidelity();
      if (inf < best.infidelity) best = {f0e_over_beta[ix], f1e_over_beta[iy], inf};
    }
    out.ridge.push_back(best);
  }
  return out;
}

SweepResult frequency_ratio_sweep(const gates::GateSpec& gate, const std::vector<double>& ratios,
                                  double f0e_over_beta, double gamma_over_beta,
                                  const ExperimentOptions& opts) {
  require_positive(ratios, "f1e_over_f0e");
  require_monotone(ratios, "f1e_over_f0e");
  std::vector<Task> tasks;
  for (double r : ratios) tasks.push_back({1.0, {f0e_over_beta, r * f0e_over_beta, gamma_over_beta, false}});
  SweepResult out;
  out.x_name = "f1e_over_f0e";
  out.x = ratios;
  out.full = evaluate(gate, tasks, opts);
  return out;
}

double asymptotic_infidelity(const gates::GateSpec& gate, std::size_t n_states) {
  if (n_states == 0) throw std::invalid_argument("asymptotic_infidelity: n_states must be >= 1");
  const auto states = input_states(gate, n_states);
  const std::size_t dim = gate.is_two_qubit() ? model::kTwoIonLevels : model::kLevels;
  const ComplexMatrix u = gates::embed_qubit_unitary(gates::ideal_unitary(gate), dim);
  double sum = 0.0;
  for (const auto& psi : states) sum += std::norm(linalg::inner(psi, linalg::apply(u, psi)));
  return 1.0 - sum / static_cast<double>(states.size());
}

}  // namespace holonomy::experiments
