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

#include "holonomy/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace holonomy::solver {

namespace {

constexpr Complex kI{0.0, 1.0};

struct Entry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

std::vector<Entry> nonzeros(const ComplexMatrix& m) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j) != Complex{}) out.push_back({i, j, m(i, j)});
    }
  }
  return out;
}

// Channel in sparse form: jump entries and those of L^+ L.
struct PreparedChannel {
  double rate;
  std::vector<Entry> jump;
  std::vector<Entry> number;
};

std::vector<PreparedChannel> prepare(std::span<const DecayChannel> channels, std::size_t dim) {
  std::vector<PreparedChannel> out;
  for (const auto& ch : channels) {
    if (ch.jump.rows() != dim || ch.jump.cols() != dim) {
      throw DimensionError("lindblad_rhs: jump operator " + ch.jump.shape() +
                           " does not match state dimension " + std::to_string(dim));
    }
    if (!(ch.rate >= 0.0)) throw std::invalid_argument("DecayChannel: rate must be non-negative");
    if (ch.rate == 0.0) continue;
    out.push_back({ch.rate, nonzeros(ch.jump), nonzeros(linalg::adjoint(ch.jump) * ch.jump)});
  }
  return out;
}

// out = i[rho, H] + sum_k gamma_k D_k(rho), overwriting out.
void apply_generator(const ComplexMatrix& rho, std::span<const Entry> h,
                     std::span<const PreparedChannel> channels, ComplexMatrix& out) {
  const std::size_t n = rho.rows();
  std::fill(out.entries().begin(), out.entries().end(), Complex{});
  for (const auto& [i, k, v] : h) {
    const Complex mv = -kI * v;
    for (std::size_t j = 0; j < n; ++j) out(i, j) += mv * rho(k, j);
  }
  for (const auto& [k, j, v] : h) {
    const Complex pv = kI * v;
    for (std::size_t i = 0; i < n; ++i) out(i, j) += rho(i, k) * pv;
  }
  for (const auto& ch : channels) {
    for (const auto& [a, b, v] : ch.jump) {
      for (const auto& [c, d, w] : ch.jump) out(a, c) += ch.rate * v * rho(b, d) * std::conj(w);
    }
    const double half = 0.5 * ch.rate;
    for (const auto& [a, b, v] : ch.number) {
      const Complex hv = half * v;
      for (std::size_t j = 0; j < n; ++j) out(a, j) -= hv * rho(b, j);
      for (std::size_t i = 0; i < n; ++i) out(i, b) -= rho(i, a) * hv;
    }
  }
}

void hermitize(ComplexMatrix& m) {
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
}

double trace_deviation(const ComplexMatrix& m) { return std::abs(linalg::trace(m) - 1.0); }

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Fifth-order weights minus embedded fourth-order weights.
constexpr std::array<double, 7> kE{71.0 / 57600,  0.0,         -71.0 / 16695, 71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

void check_validity(const ComplexMatrix& rho, double t, double& worst_trace, std::size_t& count) {
  ++count;
  const double dev = trace_deviation(rho);
  worst_trace = std::max(worst_trace, dev);
  if (dev > kTraceTolerance) {
    throw NumericalError("trace drifted by " + std::to_string(dev) + " at t=" + std::to_string(t), t);
  }
  if (!linalg::is_positive_semidefinite(rho, kPositivityTolerance)) {
    throw NumericalError("density matrix lost positivity (min eigenvalue " +
                             std::to_string(linalg::min_eigenvalue_hermitian(rho)) +
                             ") at t=" + std::to_string(t),
                         t);
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (!rho_.is_square()) {
    throw DimensionError("DensityMatrix: expected a square matrix, got " + rho_.shape());
  }
  const double herm = linalg::hermiticity_error(rho_);
  if (herm > 1e-10) {
    throw std::invalid_argument("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const double dev = trace_deviation(rho_);
  if (dev > kTraceTolerance) {
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 by " + std::to_string(dev));
  }
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
  return DensityMatrix(linalg::outer(psi, psi));
}

double DensityMatrix::purity() const { return linalg::trace(rho_ * rho_).real(); }

std::vector<DecayChannel> amplitude_damping(double gamma) {
  if (gamma == 0.0) return {};
  return {{ComplexMatrix::unit(model::kLevels, model::kSink, model::kExcited), gamma}};
}

std::vector<DecayChannel> amplitude_damping_two_ion(double gamma) {
  if (gamma == 0.0) return {};
  const ComplexMatrix lower = ComplexMatrix::unit(model::kLevels, model::kSink, model::kExcited);
  const ComplexMatrix id = ComplexMatrix::identity(model::kLevels);
  return {{linalg::kron(lower, id), gamma}, {linalg::kron(id, lower), gamma}};
}

void ValidityLog::record(double trace_deviation, double min_eigenvalue, std::size_t checks) {
  std::lock_guard lock(mutex_);
  trace_deviation_ = std::max(trace_deviation_, trace_deviation);
  min_eigenvalue_ = std::min(min_eigenvalue_, min_eigenvalue);
  checks_ += checks;
}

double ValidityLog::worst_trace_deviation() const {
  std::lock_guard lock(mutex_);
  return trace_deviation_;
}

double ValidityLog::worst_min_eigenvalue() const {
  std::lock_guard lock(mutex_);
  return min_eigenvalue_;
}

std::size_t ValidityLog::checks() const {
  std::lock_guard lock(mutex_);
  return checks_;
}

void IntegratorSettings::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("IntegratorSettings: tolerances must be positive");
  }
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& h,
                           std::span<const DecayChannel> channels) {
  if (!rho.is_square() || !h.is_square() || rho.rows() != h.rows()) {
    throw DimensionError("lindblad_rhs: shape mismatch " + rho.shape() + " vs " + h.shape());
  }
  const auto prepared = prepare(channels, rho.rows());
  const auto entries = nonzeros(h);
  ComplexMatrix out(rho.rows(), rho.cols());
  apply_generator(rho, entries, prepared, out);
  return out;
}

ComplexMatrix lindblad_rhs(const DensityMatrix& rho, const ComplexMatrix& h,
                           std::span<const DecayChannel> channels) {
  return lindblad_rhs(rho.matrix(), h, channels);
}

DensityMatrix integrate(const DensityMatrix& rho0, const HamiltonianFn& hamiltonian,
                        std::span<const DecayChannel> channels, double t0, double t1,
                        const IntegratorSettings& settings) {
  settings.validate();
  if (!(t1 > t0)) {
    throw std::invalid_argument("integrate: t1 must exceed t0");
  }
  const std::size_t n = rho0.dim();
  const auto prepared = prepare(channels, n);
  const double span = t1 - t0;
  const double max_step = settings.max_step > 0.0 ? settings.max_step : span;
  const double min_step = 1e-12 * span;

  auto eval = [&](double t, const ComplexMatrix& y, ComplexMatrix& out) {
    const ComplexMatrix h = hamiltonian(t);
    if (h.rows() != n || h.cols() != n) {
      throw DimensionError("integrate: Hamiltonian " + h.shape() + " does not match state dimension " +
                           std::to_string(n));
    }
    apply_generator(y, nonzeros(h), prepared, out);
  };

  ComplexMatrix y = rho0.matrix();
  std::array<ComplexMatrix, 7> k{y, y, y, y, y, y, y};
  ComplexMatrix stage = y;
  ComplexMatrix next = y;

  double t = t0;
  double h = settings.initial_step > 0.0 ? settings.initial_step : 1e-3 * std::min(max_step, span);
  h = std::min(h, max_step);
  eval(t, y, k[0]);

  std::size_t accepted = 0;
  double worst_trace = trace_deviation(y);
  const bool checking = settings.validity_check_interval > 0;
  std::size_t n_checks = 0;

  while (t < t1) {
    bool last = false;
    if (t + h >= t1) {
      h = t1 - t;
      last = true;
    }

    for (std::size_t s = 1; s < 7; ++s) {
      stage = y;
      for (std::size_t j = 0; j < s; ++j) {
        if (kA[s][j] != 0.0) stage.add_scaled(k[j], h * kA[s][j]);
      }
      if (s == 6) next = stage;
      eval(t + kC[s] * h, stage, k[s]);
    }

    double err = 0.0;
    double scale = 0.0;
    const auto ky = y.entries();
    const auto kn = next.entries();
    for (std::size_t idx = 0; idx < ky.size(); ++idx) {
      Complex e{};
      for (std::size_t s = 0; s < 7; ++s) {
        if (kE[s] != 0.0) e += kE[s] * k[s].entries()[idx];
      }
      err = std::max(err, std::abs(h * e));
      scale = std::max({scale, std::abs(ky[idx]), std::abs(kn[idx])});
    }
    const double tol = settings.abs_tol + settings.rel_tol * scale;
    const double ratio = err / tol;

    if (!std::isfinite(ratio)) {
      throw NumericalError("non-finite error estimate at t=" + std::to_string(t), t);
    }

    if (ratio <= 1.0) {
      t = last ? t1 : t + h;
      y = next;
      hermitize(y);
      // The generator maps A^+ to (L A)^+, so the Hermitian part of the FSAL
      // stage is exactly the derivative at the re-Hermitized state.
      k[0] = k[6];
      hermitize(k[0]);
      ++accepted;
      if (checking && accepted % settings.validity_check_interval == 0) {
        check_validity(y, t, worst_trace, n_checks);
      }
      const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
      if (!last) h = std::min(h * factor, max_step);
    } else {
      h *= std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 1.0);
      if (h < min_step) {
        throw NumericalError("step size underflow (h=" + std::to_string(h) + ") at t=" +
                                 std::to_string(t),
                             t);
      }
    }
  }

  if (checking) {
    check_validity(y, t1, worst_trace, n_checks);
    if (settings.validity_log) {
      settings.validity_log->record(worst_trace, linalg::min_eigenvalue_hermitian(y), n_checks);
    }
  }
  return DensityMatrix(std::move(y));
}

DensityMatrix evolve_idle(const DensityMatrix& rho, std::span<const DecayChannel> channels,
                          double duration, const IntegratorSettings& settings) {
  if (!(duration > 0.0)) return rho;
  const std::size_t n = rho.dim();
  std::vector<const DecayChannel*> active;
  for (const auto& ch : channels) {
    if (ch.jump.rows() != n || ch.jump.cols() != n) {
      throw DimensionError("evolve_idle: jump operator " + ch.jump.shape() +
                           " does not match state dimension " + std::to_string(n));
    }
    if (ch.rate > 0.0) active.push_back(&ch);
  }
  if (active.empty()) return rho;

  constexpr double kExact = 1e-12;
  bool closed_form = true;
  std::vector<ComplexMatrix> projectors;
  for (const auto* ch : active) {
    ComplexMatrix p = linalg::adjoint(ch->jump) * ch->jump;
    closed_form = closed_form && linalg::max_abs(p * p - p) <= kExact &&
                  linalg::max_abs(p * ch->jump) <= kExact;
    projectors.push_back(std::move(p));
  }
  for (std::size_t a = 0; closed_form && a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const auto& la = active[a]->jump;
      const auto& lb = active[b]->jump;
      closed_form = closed_form && linalg::max_abs(linalg::commutator(la, lb)) <= kExact &&
                    linalg::max_abs(linalg::commutator(la, linalg::adjoint(lb))) <= kExact;
    }
  }

  if (!closed_form) {
    IntegratorSettings idle = settings;
    idle.max_step = 0.0;
    const ComplexMatrix zero(n, n);
    return integrate(rho, [&](double) { return zero; }, channels, 0.0, duration, idle);
  }

  // Kraus form of each amplitude-damping semigroup:
  //   K0 = I - (1 - e^{-rate t/2}) P,  K1 = sqrt(1 - e^{-rate t}) L.
  ComplexMatrix state = rho.matrix();
  for (std::size_t c = 0; c < active.size(); ++c) {
    const double keep = std::exp(-active[c]->rate * duration);
    ComplexMatrix k0 = ComplexMatrix::identity(n);
    k0.add_scaled(projectors[c], -(1.0 - std::sqrt(keep)));
    const ComplexMatrix k1 = Complex(std::sqrt(1.0 - keep)) * active[c]->jump;
    state = k0 * state * linalg::adjoint(k0) + k1 * state * linalg::adjoint(k1);
  }
  hermitize(state);
  return DensityMatrix(std::move(state));
}

DensityMatrix run_protocol(const DensityMatrix& rho0, const model::PulseSequence& sequence,
                           const model::DriveConfig& drive, const IntegratorSettings& settings) {
  drive.validate();
  if (rho0.dim() != model::kLevels) {
    throw DimensionError("run_protocol: single-ion protocol needs a 4-level state, got dimension " +
                         std::to_string(rho0.dim()));
  }
  const auto channels = amplitude_damping(drive.gamma);
  DensityMatrix rho = rho0;
  double t = 0.0;
  for (const auto& [loop, pulse] : sequence.entries()) {
    rho = evolve_idle(rho, channels, pulse.window_start() - t, settings);
    IntegratorSettings window = settings;
    if (window.max_step <= 0.0) window.max_step = 0.05 / pulse.beta;
    rho = integrate(
        rho,
        [&, loop = loop, pulse = pulse](double time) {
          return model::hamiltonian_single(time, loop, pulse, drive);
        },
        channels, pulse.window_start(), pulse.window_end(), window);
    t = pulse.window_end();
  }
  return rho;
}

DensityMatrix run_protocol(const DensityMatrix& rho0, const model::TwoQubitConfig& cfg,
                           const IntegratorSettings& settings) {
  cfg.validate();
  if (rho0.dim() != model::kTwoIonLevels) {
    throw DimensionError("run_protocol: two-ion protocol needs a 16-level state, got dimension " +
                         std::to_string(rho0.dim()));
  }
  const auto channels = amplitude_damping_two_ion(cfg.gamma);
  DensityMatrix rho = evolve_idle(rho0, channels, cfg.pulse.window_start(), settings);
  IntegratorSettings window = settings;
  if (window.max_step <= 0.0) window.max_step = 0.05 / cfg.pulse.beta;
  return integrate(
      rho, [&](double time) { return model::hamiltonian_two_qubit(time, cfg); }, channels,
      cfg.pulse.window_start(), cfg.pulse.window_end(), window);
}

}  // namespace holonomy::solver
