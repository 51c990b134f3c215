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
#include <random>

#include "holonomy/linalg.hpp"

using namespace holonomy;
using namespace holonomy::linalg;

namespace {

ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  std::normal_distribution<double> d;
  ComplexMatrix m(r, c);
  for (auto& z : m.entries()) z = {d(rng), d(rng)};
  return m;
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t n) {
  return hermitian_part(random_matrix(rng, n, n));
}

}  // namespace

TEST_CASE("construction rejects empty and mismatched shapes") {
  CHECK_THROWS_AS(ComplexMatrix(0, 2), DimensionError);
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<Complex>(3)), DimensionError);
  ComplexMatrix m{{1, 2}, {3, 4}};
  CHECK(m(1, 0) == Complex(3));
  CHECK(m.entries().size() == 4);
}

TEST_CASE("kron") {
  CHECK(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)) == ComplexMatrix::identity(4));

  ComplexMatrix raise{{0, 1}, {0, 0}};
  auto k = kron(raise, ComplexMatrix::identity(2));
  ComplexMatrix expected(4, 4);
  expected(0, 2) = 1;
  expected(1, 3) = 1;
  CHECK(k == expected);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    auto a = random_matrix(rng, 2, 2);
    auto b = random_matrix(rng, 2, 2);
    auto c = random_matrix(rng, 2, 2);
    CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-12);
    CHECK(max_abs(kron(kron(a, b), c) - kron(a, kron(b, c))) < 1e-12);
  }

  auto rect = kron(ComplexMatrix(2, 3), ComplexMatrix(1, 2));
  CHECK(rect.rows() == 2);
  CHECK(rect.cols() == 6);
}

TEST_CASE("adjoint") {
  CHECK(adjoint(ComplexMatrix::identity(3)) == ComplexMatrix::identity(3));
  const Complex i(0, 1);
  ComplexMatrix a{{0, i}, {0, 0}};
  ComplexMatrix expected{{0, 0}, {-i, 0}};
  CHECK(adjoint(a) == expected);

  std::mt19937_64 rng(12);
  for (int n = 0; n < 20; ++n) {
    auto x = random_matrix(rng, 3, 3);
    auto y = random_matrix(rng, 3, 3);
    CHECK(adjoint(adjoint(x)) == x);
    CHECK(max_abs(adjoint(matmul(x, y)) - matmul(adjoint(y), adjoint(x))) < 1e-12);
  }
}

TEST_CASE("matmul, commutator and trace") {
  std::mt19937_64 rng(13);
  auto a = random_matrix(rng, 4, 4);
  auto b = random_matrix(rng, 4, 4);
  CHECK(max_abs(commutator(a, a)) == 0.0);
  CHECK(trace(ComplexMatrix::identity(4)) == Complex(4));
  CHECK(std::abs(trace(commutator(a, b))) < 1e-12);
  CHECK(max_abs(matmul(a, ComplexMatrix::identity(4)) - a) == 0.0);

  ComplexMatrix x{{1, 2}, {3, 4}};
  ComplexMatrix y{{5, 6}, {7, 8}};
  ComplexMatrix xy{{19, 22}, {43, 50}};
  CHECK(matmul(x, y) == xy);
}

TEST_CASE("dimension errors name both shapes") {
  ComplexMatrix a(2, 3);
  ComplexMatrix b(2, 3);
  try {
    (void)matmul(a, b);
    FAIL("expected DimensionError");
  } catch (const DimensionError& e) {
    const std::string what = e.what();
    CHECK(what.find("2x3") != std::string::npos);
  }
  CHECK_THROWS_AS(commutator(a, a), DimensionError);
  CHECK_THROWS_AS(trace(a), DimensionError);
  CHECK_THROWS_AS(a + ComplexMatrix(3, 2), DimensionError);
}

TEST_CASE("min_eigenvalue_hermitian") {
  ComplexMatrix d(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 2;
  d(2, 2) = 3;
  CHECK(std::abs(min_eigenvalue_hermitian(d) - 1.0) < 1e-9);
  CHECK(std::abs(min_eigenvalue_hermitian(ComplexMatrix::unit(4, 2, 2))) < 1e-9);
  ComplexMatrix m{{2, 1}, {1, 2}};
  CHECK(std::abs(min_eigenvalue_hermitian(m) - 1.0) < 1e-9);

  ComplexMatrix bad{{0, 1}, {0, 0}};
  CHECK_THROWS_AS(min_eigenvalue_hermitian(bad), std::invalid_argument);

  std::mt19937_64 rng(14);
  for (int n = 0; n < 30; ++n) {
    // 2x2 closed form: (a + d)/2 - sqrt(((a - d)/2)^2 + |b|^2)
    auto h = random_hermitian(rng, 2);
    const double a = h(0, 0).real();
    const double dd = h(1, 1).real();
    const double expected = 0.5 * (a + dd) - std::sqrt(0.25 * (a - dd) * (a - dd) + std::norm(h(0, 1)));
    CHECK(std::abs(min_eigenvalue_hermitian(h) - expected) < 1e-9);
  }
  for (std::size_t dim : {4u, 16u}) {
    auto a = random_matrix(rng, dim, dim);
    CHECK(min_eigenvalue_hermitian(matmul(adjoint(a), a)) >= -1e-9);
  }
}

TEST_CASE("min eigenvalue of a rotated diagonal matrix") {
  // U diag(l) U^+ with U from the Cayley transform of a Hermitian matrix.
  std::mt19937_64 rng(15);
  const std::size_t n = 16;
  auto h = random_hermitian(rng, n);
  ComplexMatrix lam(n, n);
  for (std::size_t i = 0; i < n; ++i) lam(i, i) = -0.3 + 0.1 * static_cast<double>(i);
  // U = exp(i h) via a truncated series on the scaled matrix, then squared.
  const Complex i(0, 1);
  ComplexMatrix x = (i / 64.0) * h;
  ComplexMatrix u = ComplexMatrix::identity(n);
  ComplexMatrix term = ComplexMatrix::identity(n);
  for (int k = 1; k < 20; ++k) {
    term = (1.0 / k) * matmul(term, x);
    u += term;
  }
  for (int k = 0; k < 6; ++k) u = matmul(u, u);
  CHECK(max_abs(matmul(u, adjoint(u)) - ComplexMatrix::identity(n)) < 1e-10);
  auto a = hermitian_part(matmul(matmul(u, lam), adjoint(u)));
  CHECK(std::abs(min_eigenvalue_hermitian(a) + 0.3) < 1e-9);
}

TEST_CASE("positive semidefinite test") {
  CHECK(is_positive_semidefinite(ComplexMatrix::unit(4, 0, 0), 1e-8));
  ComplexMatrix m{{1, 0}, {0, -1e-3}};
  CHECK_FALSE(is_positive_semidefinite(m, 1e-8));
}

TEST_CASE("state vectors") {
  auto e = basis_state(4, 2);
  CHECK(e[2] == Complex(1));
  CHECK(norm(e) == 1.0);
  ComplexMatrix x{{0, 1}, {1, 0}};
  auto flipped = apply(x, basis_state(2, 0));
  CHECK(flipped[1] == Complex(1));
  auto p = outer(e, e);
  CHECK(p == ComplexMatrix::unit(4, 2, 2));
  auto ab = kron(basis_state(4, 1), basis_state(4, 3));
  CHECK(ab[7] == Complex(1));
  CHECK(inner(basis_state(4, 1), basis_state(4, 1)) == Complex(1));
}
