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

#include <cstddef>
#include <string>
#include <vector>

#include "qthermo/matrix.hpp"

namespace qthermo {

enum class GateKind {
  kHadamard,
  kPhase,               // u1(theta) = diag(1, e^{i theta})
  kU2,                  // IBM u2(a, b)
  kCnot,
  kControlledRotation,  // controlled Ry(theta): |0> -> cos|0> + sin|1>
  kCoupling,            // exp(i s chi sigma_basis (x) Sigma_z)
  kDrive,               // exp(-i angle sigma_basis)
};

enum class Basis { kX, kZ };

std::string to_string(GateKind kind);
std::string to_string(Basis basis);

// A unitary acting on one or two qubits of a register.
//
// For two-qubit gates `qubits()[0]` labels the more significant index of the
// 4x4 matrix, i.e. the matrix is written in the {|00>, |01>, |10>, |11>}
// basis of |qubits[0] qubits[1]>. For controlled gates qubits[0] is the
// control.
class GateOp {
 public:
  // Throws InternalError if the matrix is not unitary within 1e-12, the
  // qubit list does not match the matrix size, qubits repeat, or a parameter
  // is not finite.
  GateOp(GateKind kind, std::vector<std::size_t> qubits,
         std::vector<double> params, Matrix matrix);

  GateKind kind() const { return kind_; }
  const std::vector<std::size_t>& qubits() const { return qubits_; }
  const std::vector<double>& params() const { return params_; }
  const Matrix& matrix() const { return matrix_; }
  std::size_t arity() const { return qubits_.size(); }

  std::string name() const;

 private:
  GateKind kind_;
  std::vector<std::size_t> qubits_;
  std::vector<double> params_;
  Matrix matrix_;
};

// Time-ordered gate list: front() is applied first.
using Circuit = std::vector<GateOp>;

inline void append(Circuit& dst, const Circuit& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

}  // namespace qthermo
