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

#include "holonomy/gates.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holonomy::gates {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Computational levels of the 4- and 16-level spaces, in qubit order.
std::vector<std::size_t> computational_levels(std::size_t dim) {
  using model::kLevel0;
  using model::kLevel1;
  using model::two_ion_index;
  if (dim == model::kLevels) return {kLevel0, kLevel1};
  if (dim == model::kTwoIonLevels) {
    return {two_ion_index(kLevel0, kLevel0), two_ion_index(kLevel0, kLevel1),
            two_ion_index(kLevel1, kLevel0), two_ion_index(kLevel1, kLevel1)};
  }
  return {};
}

}  // namespace

BlochVector BlochVector::from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double dot(const BlochVector& a, const BlochVector& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

BlochVector cross(const BlochVector& a, const BlochVector& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

std::vector<model::LoopParams> GateSpec::loops() const {
  if (const auto* s = std::get_if<SingleLoop>(&variant)) return {s->loop};
  if (const auto* d = std::get_if<DoubleLoop>(&variant)) return {d->first, d->second};
  return {};
}

GateSpec single_loop(std::string name, const model::LoopParams& loop) {
  return {std::move(name), SingleLoop{BlochVector::from_angles(loop.theta, loop.phi), loop}};
}

GateSpec double_loop(std::string name, const model::LoopParams& first,
                     const model::LoopParams& second) {
  return {std::move(name),
          DoubleLoop{BlochVector::from_angles(first.theta, first.phi),
                     BlochVector::from_angles(second.theta, second.phi), first, second}};
}

GateSpec two_qubit(std::string name, double theta, double phi) {
  return {std::move(name), TwoQubit{theta, phi}};
}

ComplexMatrix holonomy_single(const BlochVector& n) {
  return {{n.z, Complex(n.x, -n.y)}, {Complex(n.x, n.y), -n.z}};
}

ComplexMatrix holonomy_double(const BlochVector& n, const BlochVector& m) {
  const double c = dot(n, m);
  const BlochVector v = cross(n, m);
  // c I - i (v.sigma)
  return {{c - kI * v.z, -kI * Complex(v.x, -v.y)}, {-kI * Complex(v.x, v.y), c + kI * v.z}};
}

ComplexMatrix ideal_two_qubit(double theta, double phi) {
  ComplexMatrix u = ComplexMatrix::identity(4);
  u(0, 0) = std::cos(theta);
  u(0, 3) = std::polar(std::sin(theta), -phi);
  u(3, 0) = std::polar(std::sin(theta), phi);
  u(3, 3) = -std::cos(theta);
  return u;
}

ComplexMatrix ideal_unitary(const GateSpec& gate) {
  if (const auto* s = std::get_if<SingleLoop>(&gate.variant)) return holonomy_single(s->n);
  if (const auto* d = std::get_if<DoubleLoop>(&gate.variant)) return holonomy_double(d->n, d->m);
  const auto& t = std::get<TwoQubit>(gate.variant);
  return ideal_two_qubit(t.theta, t.phi);
}

const std::vector<std::string>& gate_names() {
  static const std::vector<std::string> names{"X", "NOT", "H", "Z", "S", "phase-shift", "single-pulse", "CZ"};
  return names;
}

GateSpec catalog(std::string_view name, const GateParams& params) {
  const std::string key = lower(name);
  const double phi = params.phi.value_or(0.0);
  if (key == "x" || key == "not") return single_loop("X", {kPi / 2, 0.0});
  if (key == "h" || key == "hadamard") return single_loop("H", {kPi / 4, 0.0});
  if (key == "z") return single_loop("Z", {0.0, 0.0});
  if (key == "s") return double_loop("S", {kPi / 2, 0.0}, {kPi / 2, kPi / 4});
  if (key == "phase-shift") {
    if (params.phi_prime && params.delta_phi) {
      throw std::invalid_argument("phase-shift: give either phi-prime or delta-phi, not both");
    }
    const double second = params.phi_prime ? *params.phi_prime : phi + params.delta_phi.value_or(0.0);
    return double_loop("phase-shift", {kPi / 2, phi}, {kPi / 2, second});
  }
  if (key == "single-pulse") return single_loop("single-pulse", {params.theta.value_or(kPi / 4), phi});
  if (key == "cz") return two_qubit("CZ", params.theta.value_or(0.0), phi);

  std::string valid;
  for (const auto& n : gate_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'; valid names: " + valid);
}

ComplexMatrix embed_qubit_unitary(const ComplexMatrix& u, std::size_t dim) {
  const auto levels = computational_levels(dim);
  if (levels.empty() || !u.is_square() || u.rows() != levels.size()) {
    throw DimensionError("embed_qubit_unitary: cannot embed " + u.shape() + " into dimension " +
                         std::to_string(dim));
  }
  ComplexMatrix out = ComplexMatrix::identity(dim);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = 0; j < levels.size(); ++j) out(levels[i], levels[j]) = u(i, j);
  }
  return out;
}

}  // namespace holonomy::gates
