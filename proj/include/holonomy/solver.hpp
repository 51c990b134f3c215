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

// Lindblad master equation
//
//   drho/dt = i[rho, H(t)] + sum_k gamma_k (L_k rho L_k^+ - 1/2 {L_k^+ L_k, rho})
//
// integrated with an adaptive Dormand-Prince 5(4) pair, plus the protocol
// driver that strings pulse windows and idle gaps together.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include "holonomy/linalg.hpp"
#include "holonomy/model.hpp"

namespace holonomy::solver {

using linalg::ComplexMatrix;
using linalg::StateVector;

/// Integration failure (step-size underflow, state validity violation).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double time) : std::runtime_error(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Hermitian, unit-trace density matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10) and trace (1e-8). Positivity is checked by
  /// the diagnostics, not here.
  explicit DensityMatrix(ComplexMatrix rho);

  static DensityMatrix pure(std::span<const Complex> psi);

  const ComplexMatrix& matrix() const { return rho_; }
  std::size_t dim() const { return rho_.rows(); }
  double purity() const;
  /// Population of basis level `index`.
  double population(std::size_t index) const { return rho_(index, index).real(); }

 private:
  ComplexMatrix rho_;
};

struct DecayChannel {
  ComplexMatrix jump;
  double rate = 0.0;
};

/// L = |g><e| at rate gamma on one ion; empty when gamma == 0.
std::vector<DecayChannel> amplitude_damping(double gamma);
/// |g><e| (x) I and I (x) |g><e|, each at rate gamma; empty when gamma == 0.
std::vector<DecayChannel> amplitude_damping_two_ion(double gamma);

/// Running record of the state-validity diagnostics, shared across threads.
class ValidityLog {
 public:
  /// Worst trace deviation over `checks` sampled steps and the smallest
  /// eigenvalue at the end of the trajectory.
  void record(double trace_deviation, double min_eigenvalue, std::size_t checks);
  double worst_trace_deviation() const;
  double worst_min_eigenvalue() const;
  std::size_t checks() const;

 private:
  mutable std::mutex mutex_;
  double trace_deviation_ = 0.0;
  double min_eigenvalue_ = 0.0;
  std::size_t checks_ = 0;
};

struct IntegratorSettings {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  /// Non-positive means automatic: 1e-3 of the largest allowed step.
  double initial_step = 0.0;
  /// Non-positive means automatic: 0.05/beta inside pulse windows,
  /// unbounded for bare integrate() calls.
  double max_step = 0.0;
  /// When non-zero, every n-th accepted step checks |tr rho - 1| <= 1e-8 and
  /// lambda_min(rho) >= -1e-8, throwing NumericalError on violation.
  std::size_t validity_check_interval = 0;
  /// Receives the worst values seen by the checks above.
  std::shared_ptr<ValidityLog> validity_log;

  void validate() const;
};

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kPositivityTolerance = 1e-8;

/// i[rho, H] + sum_k gamma_k D_k(rho). Accepts any square rho so that Runge-Kutta
/// stages (which need not be physical states) can reuse it.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                           std::span<const DecayChannel> channels);
ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const ComplexMatrix& h,
                           std::span<const DecayChannel> channels);

using HamiltonianFn = std::function<ComplexMatrix(double)>;

/// Evolves rho0 from t0 to t1. Throws NumericalError when the step size drops
/// below 1e-12*(t1 - t0), naming the time of failure.
DensityMatrix integrate(const DensityMatrix& rho0, const HamiltonianFn& hamiltonian,
                        std::span<const DecayChannel> channels, double t0, double t1,
                        const IntegratorSettings& settings);

/// Exact evolution under the channels alone (H = 0) for `duration`. Requires each
/// jump to satisfy P = L^+L a projector with P L = 0 and distinct channels to
/// commute; falls back to numerical integration otherwise.
DensityMatrix evolve_idle(const DensityMatrix& rho, std::span<const DecayChannel> channels,
                          double duration, const IntegratorSettings& settings);

/// Runs every pulse window of the sequence and the idle gaps between them,
/// from t = 0 to the end of the last window.
DensityMatrix run_protocol(const DensityMatrix& rho0, const model::PulseSequence& sequence,
                           const model::DriveConfig& drive, const IntegratorSettings& settings);

/// Single effective two-ion pulse from t = 0 to the end of its window.
DensityMatrix run_protocol(const DensityMatrix& rho0, const model::TwoQubitConfig& cfg,
                           const IntegratorSettings& settings);

}  // namespace holonomy::solver
