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


#include <doctest.h>

#include <cmath>

#include "holonomy/gates.hpp"
#include "holonomy/sampling.hpp"

using namespace holonomy;
using namespace holonomy::sampling;

TEST_CASE("Fibonacci nodes") {
  CHECK_THROWS_AS(fibonacci_nodes(0), std::invalid_argument);
  auto one = fibonacci_nodes(1);
  REQUIRE(one.points.size() == 1);
  CHECK(one.points[0][2] == 0.0);
  auto two = fibonacci_nodes(2);
  CHECK(two.points[0][2] == 0.5);
  CHECK(two.points[1][2] == -0.5);

  for (std::size_t n : {1u, 7u, 100u, 1000u}) {
    for (const auto& p : fibonacci_nodes(n).points) {
      CHECK(std::abs(std::hypot(p[0], p[1], p[2]) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("Fibonacci nodes are near-uniform") {
  double z2 = 0.0;
  for (const auto& p : fibonacci_nodes(1000).points) z2 += p[2] * p[2];
  CHECK(std::abs(z2 / 1000.0 - 1.0 / 3.0) <= 0.01);

  std::array<double, 3> mean{};
  for (const auto& p : fibonacci_nodes(100).points)
    for (int k = 0; k < 3; ++k) mean[k] += p[k] / 100.0;
  CHECK(std::hypot(mean[0], mean[1], mean[2]) <= 0.02);

  // midpoints in z are symmetric about the equator
  double zsum = 0.0;
  for (const auto& p : fibonacci_nodes(101).points) zsum += p[2];
  CHECK(std::abs(zsum) < 1e-12);
}

TEST_CASE("Fibonacci nodes are deterministic") {
  auto a = fibonacci_nodes(333);
  auto b = fibonacci_nodes(333);
  CHECK(a.points == b.points);
}

TEST_CASE("Bloch vector to state") {
  auto zero = bloch_to_state({0, 0, 1});
  CHECK(std::abs(zero[0] - 1.0) < 1e-15);
  CHECK(std::abs(zero[1]) < 1e-15);
  auto one = bloch_to_state({0, 0, -1});
  CHECK(std::abs(one[1] - 1.0) < 1e-15);
  auto plus = bloch_to_state({1, 0, 0});
  CHECK(std::abs(plus[0] - M_SQRT1_2) < 1e-15);
  CHECK(std::abs(plus[1] - M_SQRT1_2) < 1e-15);
  REQUIRE(plus.size() == 4);
  CHECK(plus[2] == Complex(0));
  CHECK(plus[3] == Complex(0));

  // <psi|sigma|psi> recovers the point
  for (const auto& p : fibonacci_nodes(50).points) {
    auto psi = bloch_to_state(p);
    const Complex c = std::conj(psi[0]) * psi[1];
    CHECK(std::abs(2 * c.real() - p[0]) < 1e-12);
    CHECK(std::abs(2 * c.imag() - p[1]) < 1e-12);
    CHECK(std::abs(std::norm(psi[0]) - std::norm(psi[1]) - p[2]) < 1e-12);
  }
}

TEST_CASE("two-qubit inputs") {
  auto in = two_qubit_inputs();
  REQUIRE(in.size() == 4);
  CHECK(std::abs(in[0][0] - 0.5) < 1e-15);
  for (std::size_t a = 0; a < 4; ++a) {
    CHECK(std::abs(linalg::norm(in[a]) - 1.0) < 1e-15);
    for (std::size_t b = a + 1; b < 4; ++b) CHECK(std::abs(linalg::inner(in[a], in[b])) < 1e-15);
  }

  auto cz = gates::embed_qubit_unitary(gates::ideal_two_qubit(0.0, 0.0), 16);
  auto out = linalg::apply(cz, in[0]);
  const Complex a = out[model::two_ion_index(0, 0)];
  const Complex b = out[model::two_ion_index(0, 1)];
  const Complex c = out[model::two_ion_index(1, 0)];
  const Complex d = out[model::two_ion_index(1, 1)];
  CHECK(std::abs(2.0 * std::abs(a * d - b * c) - 1.0) < 1e-15);
}
