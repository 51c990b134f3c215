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

#include "holonomy/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace holonomy::model {

namespace {

Complex counter_rotating(double f, double t) { return 1.0 + std::polar(1.0, -2.0 * f * t); }

void set_coupling(ComplexMatrix& h, std::size_t row, std::size_t col, Complex value) {
  h(row, col) = value;
  h(col, row) = std::conj(value);
}

}  // namespace

OmegaWeights omega_weights(const LoopParams& loop) {
  return {std::polar(std::sin(loop.theta / 2.0), loop.phi), Complex(-std::cos(loop.theta / 2.0))};
}

PulseShape PulseShape::starting_at(double beta, double start) {
  const double half_width = kWindowFactor / beta;
  return {beta, start + half_width, half_width};
}

void PulseShape::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("PulseShape: beta must be positive, got " + std::to_string(beta));
  }
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw std::invalid_argument("PulseShape: half_width must be positive, got " +
                                std::to_string(half_width));
  }
}

double sech_envelope(double t, const PulseShape& pulse) {
  const double s = t - pulse.center;
  if (std::abs(s) > pulse.half_width) return 0.0;
  return pulse.beta / std::cosh(pulse.beta * s);
}

double pulse_area(const PulseShape& pulse) {
  return 4.0 * std::atan(std::tanh(0.5 * pulse.beta * pulse.half_width));
}

void DriveConfig::validate() const {
  if (!(f0e > 0.0) || !(f1e > 0.0)) {
    throw std::invalid_argument("DriveConfig: counter-rotating frequencies must be positive");
  }
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("DriveConfig: gamma must be non-negative");
  }
}

void PulseSequence::push_back(const PulseEntry& entry) {
  entry.pulse.validate();
  if (!entries_.empty()) {
    const PulseShape& prev = entries_.back().pulse;
    if (!(entry.pulse.center > prev.center)) {
      throw std::invalid_argument("PulseSequence: pulse centers must increase");
    }
    const double separation = entry.pulse.center - prev.center;
    const double needed = entry.pulse.half_width + prev.half_width;
    if (separation < needed * (1.0 - 1e-12)) {
      throw std::invalid_argument("PulseSequence: pulse windows overlap (separation " +
                                  std::to_string(separation) + " < " + std::to_string(needed) + ")");
    }
  }
  entries_.push_back(entry);
}

PulseSequence PulseSequence::uniform(const std::vector<LoopParams>& loops, double beta,
                                     double spacing) {
  PulseSequence seq;
  const PulseShape first = PulseShape::starting_at(beta, 0.0);
  for (std::size_t k = 0; k < loops.size(); ++k) {
    PulseShape pulse = first;
    pulse.center = first.center + 2.0 * spacing * static_cast<double>(k);
    seq.push_back({loops[k], pulse});
  }
  return seq;
}

double PulseSequence::end_time() const {
  return entries_.empty() ? 0.0 : entries_.back().pulse.window_end();
}

void TwoQubitConfig::validate() const {
  DriveConfig{f0e, f1e, gamma, rwa}.validate();
  pulse.validate();
}

ComplexMatrix hamiltonian_single(double t, const LoopParams& loop, const PulseShape& pulse,
                                 const DriveConfig& drive) {
  ComplexMatrix h(kLevels, kLevels);
  const double omega = sech_envelope(t, pulse);
  if (omega == 0.0) return h;
  const auto [w0, w1] = omega_weights(loop);
  Complex c0 = omega * w0;
  Complex c1 = omega * w1;
  if (!drive.rwa) {
    c0 *= counter_rotating(drive.f0e, t);
    c1 *= counter_rotating(drive.f1e, t);
  }
  set_coupling(h, kExcited, kLevel0, c0);
  set_coupling(h, kExcited, kLevel1, c1);
  return h;
}

BrightDark bright_dark_states(const LoopParams& loop) {
  const auto [w0, w1] = omega_weights(loop);
  BrightDark out{StateVector(kLevels), StateVector(kLevels)};
  out.bright[kLevel0] = std::conj(w0);
  out.bright[kLevel1] = std::conj(w1);
  out.dark[kLevel0] = -w1;
  out.dark[kLevel1] = w0;
  return out;
}

ComplexMatrix bright_dark_basis(const LoopParams& loop) {
  const auto [bright, dark] = bright_dark_states(loop);
  ComplexMatrix w(kLevels, kLevels);
  for (std::size_t i = 0; i < kLevels; ++i) {
    w(i, 0) = bright[i];
    w(i, 1) = dark[i];
  }
  w(kExcited, 2) = 1.0;
  w(kSink, 3) = 1.0;
  return w;
}

ComplexMatrix hamiltonian_bright_dark(double t, const LoopParams& loop, const PulseShape& pulse,
                                      const DriveConfig& drive) {
  // Basis slots: 0 = |b>, 1 = |d>, 2 = |e>, 3 = |g>.
  ComplexMatrix h(kLevels, kLevels);
  const double omega = sech_envelope(t, pulse);
  if (omega == 0.0) return h;
  const auto [w0, w1] = omega_weights(loop);
  if (drive.rwa) {
    set_coupling(h, 2, 0, omega);
    return h;
  }
  const Complex e0 = std::polar(1.0, -2.0 * drive.f0e * t);
  const Complex e1 = std::polar(1.0, -2.0 * drive.f1e * t);
  set_coupling(h, 2, 0, omega * (1.0 + std::norm(w0) * e0 + std::norm(w1) * e1));
  set_coupling(h, 2, 1, omega * w0 * w1 * (e1 - e0));
  return h;
}

ComplexMatrix hamiltonian_two_qubit(double t, const TwoQubitConfig& cfg) {
  ComplexMatrix h(kTwoIonLevels, kTwoIonLevels);
  const double envelope = sech_envelope(t, cfg.pulse);
  if (envelope == 0.0) return h;

  const double s = std::sin(cfg.theta / 2.0);
  const double c = std::cos(cfg.theta / 2.0);
  Complex pair0 = s * std::polar(1.0, cfg.phi / 2.0);
  Complex pair1 = -c * std::polar(1.0, -cfg.phi / 2.0);
  double exchange0 = s;
  double exchange1 = -c;
  if (!cfg.rwa) {
    const Complex k0 = counter_rotating(cfg.f0e, t);
    const Complex k1 = counter_rotating(cfg.f1e, t);
    pair0 *= k0 * k0;
    pair1 *= k1 * k1;
    const double cos0 = std::cos(cfg.f0e * t);
    const double cos1 = std::cos(cfg.f1e * t);
    exchange0 *= 4.0 * cos0 * cos0;
    exchange1 *= 4.0 * cos1 * cos1;
  }

  const std::size_t ee = two_ion_index(kExcited, kExcited);
  set_coupling(h, ee, two_ion_index(kLevel0, kLevel0), envelope * pair0);
  set_coupling(h, ee, two_ion_index(kLevel1, kLevel1), envelope * pair1);
  set_coupling(h, two_ion_index(kExcited, kLevel0), two_ion_index(kLevel0, kExcited),
               envelope * exchange0);
  set_coupling(h, two_ion_index(kExcited, kLevel1), two_ion_index(kLevel1, kExcited),
               envelope * exchange1);
  return h;
}

}  // namespace holonomy::model
