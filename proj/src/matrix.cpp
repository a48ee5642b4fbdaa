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

#include "qthermo/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qthermo/errors.hpp"

namespace qthermo {

Matrix::Matrix(std::size_t dim, std::initializer_list<Complex> row_major)
    : dim_(dim), data_(row_major) {
  if (data_.size() != dim * dim) {
    throw InternalError("Matrix: initializer size does not match dimension");
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const std::vector<Complex>& diag) {
  Matrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

Complex Matrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (rhs.dim_ != dim_) throw InternalError("Matrix: dimension mismatch");
  Matrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex(0.0)) continue;
      for (std::size_t c = 0; c < dim_; ++c) m(r, c) += a * rhs(k, c);
    }
  return m;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rhs.dim_ != dim_) throw InternalError("Matrix: dimension mismatch");
  Matrix m(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] += rhs.data_[i];
  return m;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rhs.dim_ != dim_) throw InternalError("Matrix: dimension mismatch");
  Matrix m(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] -= rhs.data_[i];
  return m;
}

Matrix Matrix::operator*(Complex scale) const {
  Matrix m(*this);
  for (auto& v : m.data_) v *= scale;
  return m;
}

Matrix Matrix::kron(const Matrix& rhs) const {
  const std::size_t n = dim_ * rhs.dim_;
  Matrix m(n);
  for (std::size_t r1 = 0; r1 < dim_; ++r1)
    for (std::size_t c1 = 0; c1 < dim_; ++c1)
      for (std::size_t r2 = 0; r2 < rhs.dim_; ++r2)
        for (std::size_t c2 = 0; c2 < rhs.dim_; ++c2)
          m(r1 * rhs.dim_ + r2, c1 * rhs.dim_ + c2) = (*this)(r1, c1) * rhs(r2, c2);
  return m;
}

double Matrix::max_abs_diff(const Matrix& rhs) const {
  if (rhs.dim_ != dim_) throw InternalError("Matrix: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < data_.size(); ++i)
    d = std::max(d, std::abs(data_[i] - rhs.data_[i]));
  return d;
}

bool Matrix::equal_up_to_phase(const Matrix& rhs, double tol) const {
  if (rhs.dim_ != dim_) return false;
  // Anchor the phase on the largest entry of rhs.
  std::size_t anchor = 0;
  for (std::size_t i = 1; i < data_.size(); ++i)
    if (std::abs(rhs.data_[i]) > std::abs(rhs.data_[anchor])) anchor = i;
  if (std::abs(rhs.data_[anchor]) < tol) return max_abs_diff(rhs) < tol;
  const Complex ratio = data_[anchor] / rhs.data_[anchor];
  if (std::abs(std::abs(ratio) - 1.0) > tol) return false;
  return max_abs_diff(rhs * ratio) < tol;
}

bool Matrix::is_unitary(double tol) const {
  return (adjoint() * (*this)).max_abs_diff(identity(dim_)) < tol;
}

namespace pauli {
Matrix x() { return Matrix(2, {0.0, 1.0, 1.0, 0.0}); }
Matrix y() { return Matrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
Matrix z() { return Matrix(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

}  // namespace qthermo
