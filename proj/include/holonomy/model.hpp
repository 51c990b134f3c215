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

// Time-dependent Hamiltonians of the driven Lambda system.
//
// Single ion levels are ordered (|0>, |1>, |e>, |g>). The qubit lives on
// |0>, |1>; |e> is the shared excited level driven by both lasers and |g> is
// the sink it decays into. Two-ion states use the tensor product with the
// first ion as the slow index, so |ab> has index 4*a + b.
//
// All Hamiltonians are in the interaction picture with the drives resonant.
// Time t = 0 is the left edge of the first pulse window; counter-rotating
// phases exp(-2 i f t) are evaluated at absolute t.

#pragma once

#include <utility>
#include <vector>

#include "holonomy/linalg.hpp"

namespace holonomy::model {

using linalg::ComplexMatrix;
using linalg::StateVector;

inline constexpr std::size_t kLevel0 = 0;
inline constexpr std::size_t kLevel1 = 1;
inline constexpr std::size_t kExcited = 2;
inline constexpr std::size_t kSink = 3;
inline constexpr std::size_t kLevels = 4;
inline constexpr std::size_t kTwoIonLevels = kLevels * kLevels;

/// Default truncation half-width of a pulse, in units of 1/beta.
inline constexpr double kWindowFactor = 10.0;

/// Two-ion basis index of |a>|b>.
constexpr std::size_t two_ion_index(std::size_t a, std::size_t b) { return a * kLevels + b; }

/// Relative amplitude (theta) and phase (phi) of the two laser pulses in one loop.
struct LoopParams {
  double theta = 0.0;
  double phi = 0.0;
};

struct OmegaWeights {
  Complex w0;
  Complex w1;
};

/// (sin(theta/2) e^{i phi}, -cos(theta/2)).
OmegaWeights omega_weights(const LoopParams& loop);

/// Truncated hyperbolic-secant envelope beta*sech(beta*(t - center)).
struct PulseShape {
  double beta = 1.0;
  double center = kWindowFactor;
  double half_width = kWindowFactor;

  /// Pulse whose window [start, start + 2*10/beta] opens at `start`.
  static PulseShape starting_at(double beta, double start);

  double window_start() const { return center - half_width; }
  double window_end() const { return center + half_width; }

  /// Throws std::invalid_argument unless beta > 0 and half_width > 0.
  void validate() const;
};

/// beta*sech(beta*(t - center)) inside the window, 0 outside.
double sech_envelope(double t, const PulseShape& pulse);

/// Exact area of the truncated envelope, 4*atan(tanh(beta*half_width/2)).
double pulse_area(const PulseShape& pulse);

struct DriveConfig {
  double f0e = 1.0;
  double f1e = 1.0;
  double gamma = 0.0;
  bool rwa = false;

  void validate() const;
};

struct PulseEntry {
  LoopParams loop;
  PulseShape pulse;
};

/// Ordered, non-overlapping sequence of pulses.
class PulseSequence {
 public:
  PulseSequence() = default;

  /// Appends a pulse. Throws std::invalid_argument if the window overlaps the
  /// previous one or the center does not increase.
  void push_back(const PulseEntry& entry);

  /// Loops driven back to back with inverse pulse length beta. The first
  /// window opens at t = 0 and consecutive peaks are 2*spacing apart, so the
  /// spacing equals the default half-width 10/beta for touching windows.
  static PulseSequence uniform(const std::vector<LoopParams>& loops, double beta, double spacing);

  const std::vector<PulseEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  /// End of the last window, or 0 for an empty sequence.
  double end_time() const;

 private:
  std::vector<PulseEntry> entries_;
};

struct TwoQubitConfig {
  double theta = 0.0;
  double phi = 0.0;
  double f0e = 1.0;
  double f1e = 1.0;
  double gamma = 0.0;
  PulseShape pulse;
  bool rwa = false;

  void validate() const;
};

/// 4x4 single-ion Hamiltonian. With rwa=false the coupling <e|H|j> carries the
/// counter-rotating factor (1 + e^{-2 i f_je t}).
ComplexMatrix hamiltonian_single(double t, const LoopParams& loop, const PulseShape& pulse,
                                 const DriveConfig& drive);

struct BrightDark {
  StateVector bright;
  StateVector dark;
};

/// |b> = conj(w0)|0> + conj(w1)|1>, |d> = -w1|0> + w0|1>, embedded in four levels.
BrightDark bright_dark_states(const LoopParams& loop);

/// Unitary whose columns are (|b>, |d>, |e>, |g>) in the level basis.
ComplexMatrix bright_dark_basis(const LoopParams& loop);

/// The single-ion Hamiltonian written directly in the (|b>, |d>, |e>, |g>)
/// basis. The |e><d| element Omega*w0*w1*(e^{-2if1t} - e^{-2if0t}) is the
/// dark-state leak that vanishes for homogeneous frequencies.
ComplexMatrix hamiltonian_bright_dark(double t, const LoopParams& loop, const PulseShape& pulse,
                                      const DriveConfig& drive);

/// 16x16 effective two-ion Hamiltonian E(t)*(H0 + H1).
///
/// The full branch keeps the factors (1 + e^{-2 i f t})^2 on the |ee><00|,
/// |ee><11| couplings and 4cos^2(f t) on |e0><0e|, |e1><1e|. The second factor
/// averages to 2 while the rotating-wave branch uses 1; both are kept as
/// written rather than rescaled.
ComplexMatrix hamiltonian_two_qubit(double t, const TwoQubitConfig& cfg);

}  // namespace holonomy::model
