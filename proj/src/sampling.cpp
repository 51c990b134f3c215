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

#include "holonomy/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "holonomy/model.hpp"

namespace holonomy::sampling {

BlochSample fibonacci_nodes(std::size_t n) {
  if (n == 0) throw std::invalid_argument("fibonacci_nodes: need at least one point");
  const double golden = std::numbers::phi;
  const double count = static_cast<double>(n);
  BlochSample out;
  out.points.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) - 1.0) / count;
    // Only the fractional turn matters; reducing it first keeps the angle small.
    const double turns = golden * static_cast<double>(k);
    const double azimuth = 2.0 * std::numbers::pi * (turns - std::floor(turns));
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    out.points.push_back({r * std::cos(azimuth), r * std::sin(azimuth), z});
  }
  return out;
}

linalg::StateVector bloch_to_state(const Point& p) {
  const double polar = std::acos(std::clamp(p[2], -1.0, 1.0));
  const double azimuth = std::atan2(p[1], p[0]);
  linalg::StateVector psi(model::kLevels);
  psi[model::kLevel0] = std::cos(polar / 2.0);
  psi[model::kLevel1] = std::polar(std::sin(polar / 2.0), azimuth);
  return psi;
}

std::vector<linalg::StateVector> two_qubit_inputs() {
  const double h = std::numbers::sqrt2 / 2.0;
  linalg::StateVector plus(model::kLevels);
  linalg::StateVector minus(model::kLevels);
  plus[model::kLevel0] = h;
  plus[model::kLevel1] = h;
  minus[model::kLevel0] = h;
  minus[model::kLevel1] = -h;
  return {linalg::kron(plus, plus), linalg::kron(plus, minus), linalg::kron(minus, plus),
          linalg::kron(minus, minus)};
}

}  // namespace holonomy::sampling
