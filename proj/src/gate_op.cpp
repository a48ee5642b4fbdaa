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

#include "qthermo/gate_op.hpp"

#include <cmath>
#include <sstream>

#include "qthermo/errors.hpp"

namespace qthermo {

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kHadamard: return "h";
    case GateKind::kPhase: return "u1";
    case GateKind::kU2: return "u2";
    case GateKind::kCnot: return "cx";
    case GateKind::kControlledRotation: return "cry";
    case GateKind::kCoupling: return "couple";
    case GateKind::kDrive: return "drive";
  }
  return "?";
}

std::string to_string(Basis basis) { return basis == Basis::kX ? "x" : "z"; }

GateOp::GateOp(GateKind kind, std::vector<std::size_t> qubits,
               std::vector<double> params, Matrix matrix)
    : kind_(kind),
      qubits_(std::move(qubits)),
      params_(std::move(params)),
      matrix_(std::move(matrix)) {
  if (qubits_.empty() || qubits_.size() > 2)
    throw InternalError("GateOp: only one- and two-qubit gates are supported");
  if (qubits_.size() == 2 && qubits_[0] == qubits_[1])
    throw InternalError("GateOp: repeated qubit index");
  if (matrix_.dim() != (std::size_t{1} << qubits_.size()))
    throw InternalError("GateOp: matrix size does not match qubit count");
  for (double p : params_)
    if (!std::isfinite(p)) throw InternalError("GateOp: non-finite parameter");
  if (!matrix_.is_unitary(1e-12))
    throw InternalError("GateOp: matrix is not unitary (" + to_string(kind_) + ")");
}

std::string GateOp::name() const {
  std::ostringstream os;
  os << to_string(kind_);
  if (!params_.empty()) {
    os << '(';
    for (std::size_t i = 0; i < params_.size(); ++i) os << (i ? "," : "") << params_[i];
    os << ')';
  }
  os << ' ';
  for (std::size_t i = 0; i < qubits_.size(); ++i) os << (i ? "," : "") << 'q' << qubits_[i];
  return os.str();
}

}  // namespace qthermo
