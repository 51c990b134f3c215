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

#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "holonomy/linalg.hpp"

namespace holonomy::sampling {

using Point = std::array<double, 3>;

struct BlochSample {
  std::vector<Point> points;
};

/// Golden-spiral nodes on the unit sphere:
///   z_k = 1 - (2k - 1)/n,  azimuth_k = 2*pi*golden*k  (k = 1..n).
/// Throws std::invalid_argument for n == 0.
BlochSample fibonacci_nodes(std::size_t n);

/// cos(t/2)|0> + e^{i p} sin(t/2)|1> with t = acos z, p = atan2(y, x), in the
/// four-level space.
linalg::StateVector bloch_to_state(const Point& p);

/// |++>, |+->, |-+>, |--> in the 16-level two-ion space.
std::vector<linalg::StateVector> two_qubit_inputs();

}  // namespace holonomy::sampling
