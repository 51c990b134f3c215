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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace holonomy {

using Complex = std::complex<double>;

/// Thrown when operand shapes do not conform. The message names both shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace linalg {

/// Dense row-major complex matrix. Dimensions are fixed at construction and
/// are always at least 1x1.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  /// |row><col| on an n-dimensional space.
  static ComplexMatrix unit(std::size_t n, std::size_t row, std::size_t col);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::string shape() const;

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Complex> entries() { return data_; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  /// this += scale * other, without a temporary.
  void add_scaled(const ComplexMatrix& other, Complex scale);

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
Complex trace(const ComplexMatrix& a);

/// Largest |a_ij|.
double max_abs(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);
/// max |a - a^H|; throws on non-square input.
double hermiticity_error(const ComplexMatrix& a);
/// (a + a^H) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& a);

/// Smallest eigenvalue of a Hermitian matrix. The matrix is mapped to the
/// real symmetric embedding [[Re, -Im], [Im, Re]] (same spectrum, each value
/// doubled) and diagonalised with cyclic Jacobi rotations.
/// Throws std::invalid_argument when a deviates from Hermitian by more than 1e-10.
double min_eigenvalue_hermitian(const ComplexMatrix& a);

/// True when a + shift*I admits a Cholesky factorisation, i.e. the smallest
/// eigenvalue of a is >= -shift. O(n^3/6); used for cheap positivity checks.
bool is_positive_semidefinite(const ComplexMatrix& a, double shift);

// Pure-state helpers.
using StateVector = std::vector<Complex>;

StateVector basis_state(std::size_t dim, std::size_t index);
StateVector apply(const ComplexMatrix& a, std::span<const Complex> psi);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);
double norm(std::span<const Complex> psi);
/// |ket><bra|
ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
StateVector kron(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace linalg
}  // namespace holonomy
