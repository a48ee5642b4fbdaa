// Copyright 2026 The qthermo Authors
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
#include <vector>

namespace qthermo {

using Complex = std::complex<double>;

// Small dense square complex matrix, row-major. Sizes used in this project
// never exceed 16x16, so no attempt is made at blocking or vectorisation.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  Matrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static Matrix identity(std::size_t dim);
  static Matrix diagonal(const std::vector<Complex>& diag);

  std::size_t dim() const { return dim_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * dim_ + c];
  }

  Matrix adjoint() const;
  Complex trace() const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(Complex scale) const;

  // Kronecker product, `this` occupying the more significant index.
  Matrix kron(const Matrix& rhs) const;

  // Largest entrywise modulus of (this - rhs).
  double max_abs_diff(const Matrix& rhs) const;

  // True when this equals rhs up to a single global phase factor, within tol.
  bool equal_up_to_phase(const Matrix& rhs, double tol) const;

  bool is_unitary(double tol) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

namespace pauli {
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

}  // namespace qthermo
