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

#include "qthermo/gates.hpp"

#include <cmath>
#include <numbers>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

const Complex kI(0.0, 1.0);

Matrix pauli_of(Basis basis) { return basis == Basis::kX ? pauli::x() : pauli::z(); }

// exp(i theta P) for an involutory P.
Matrix exp_i_involution(const Matrix& p, double theta) {
  return Matrix::identity(p.dim()) * std::cos(theta) + p * (kI * std::sin(theta));
}

void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw InternalError("coupling sign must be +1 or -1");
}

}  // namespace

namespace gates {

GateOp hadamard(std::size_t q) {
  const double s = 1.0 / std::sqrt(2.0);
  return GateOp(GateKind::kHadamard, {q}, {}, Matrix(2, {s, s, s, -s}));
}

GateOp phase(std::size_t q, double theta) {
  return GateOp(GateKind::kPhase, {q}, {theta}, Matrix(2, {1.0, 0.0, 0.0, std::polar(1.0, theta)}));
}

GateOp u2(std::size_t q, double a, double b) {
  const double s = 1.0 / std::sqrt(2.0);
  return GateOp(GateKind::kU2, {q}, {a, b},
                Matrix(2, {s, -s * std::polar(1.0, b), s * std::polar(1.0, a),
                           s * std::polar(1.0, a + b)}));
}

GateOp cnot(std::size_t control, std::size_t target) {
  return GateOp(GateKind::kCnot, {control, target}, {},
                Matrix(4, {1, 0, 0, 0,  //
                           0, 1, 0, 0,  //
                           0, 0, 0, 1,  //
                           0, 0, 1, 0}));
}

GateOp controlled_rotation(std::size_t control, std::size_t target, double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return GateOp(GateKind::kControlledRotation, {control, target}, {theta},
                Matrix(4, {1, 0, 0, 0,  //
                           0, 1, 0, 0,  //
                           0, 0, c, -s,  //
                           0, 0, s, c}));
}

}  // namespace gates

GateOp drive_x(double alpha, std::size_t q) {
  return GateOp(GateKind::kDrive, {q}, {alpha}, exp_i_involution(pauli::x(), -alpha));
}

GateOp drive_z(double beta, std::size_t q) {
  return GateOp(GateKind::kDrive, {q}, {beta}, exp_i_involution(pauli::z(), -beta));
}

Circuit drive_decomposition(Basis basis, double angle, std::size_t q) {
  if (basis == Basis::kZ) return {gates::phase(q, 2.0 * angle)};
  return {gates::hadamard(q), gates::phase(q, 2.0 * angle), gates::hadamard(q)};
}

GateOp coupling_gate(Basis basis, int sign, double chi, std::size_t system,
                     std::size_t detector) {
  check_sign(sign);
  const Matrix generator = pauli_of(basis).kron(pauli::z());
  return GateOp(GateKind::kCoupling, {system, detector}, {sign * chi},
                exp_i_involution(generator, sign * chi));
}

Circuit coupling_decomposition(Basis basis, int sign, double chi, std::size_t system,
                               std::size_t detector) {
  check_sign(sign);
  Circuit c;
  if (basis == Basis::kX) c.push_back(gates::hadamard(system));
  c.push_back(gates::cnot(system, detector));
  c.push_back(gates::phase(detector, -2.0 * sign * chi));
  c.push_back(gates::cnot(system, detector));
  if (basis == Basis::kX) c.push_back(gates::hadamard(system));
  return c;
}

Circuit init_system(double theta, double phi, std::size_t q) {
  return {gates::hadamard(q), gates::phase(q, theta), gates::hadamard(q),
          gates::phase(q, phi + std::numbers::pi / 2.0)};
}

void ChannelSpec::validate() const {
  if (!(p >= 0.0 && p <= 1.0))
    throw ConfigError("p", "relaxation probability must be in [0, 1], got " + std::to_string(p));
}

double relaxation_angle(double p) { return 2.0 * std::acos(std::sqrt(1.0 - p)); }

Circuit relaxation_circuit(const ChannelSpec& spec, std::size_t system) {
  spec.validate();
  if (spec.env == system) throw InternalError("relaxation_circuit: env and system coincide");
  Circuit c;
  if (spec.basis == Basis::kX) c.push_back(gates::hadamard(system));
  c.push_back(gates::cnot(spec.env, system));
  c.push_back(gates::controlled_rotation(system, spec.env, relaxation_angle(spec.p)));
  c.push_back(gates::cnot(spec.env, system));
  if (spec.basis == Basis::kX) c.push_back(gates::hadamard(system));
  return c;
}

DensityMatrix kraus_oracle(double p, const DensityMatrix& rho_in) {
  ChannelSpec{p}.validate();
  if (rho_in.dim() != 2) throw ConfigError("rho", "kraus_oracle expects a single-qubit state");
  const Matrix m0(2, {1.0, 0.0, 0.0, std::sqrt(1.0 - p)});
  const Matrix m1(2, {0.0, std::sqrt(p), 0.0, 0.0});
  const Matrix& rho = rho_in.matrix();
  return DensityMatrix(m0 * rho * m0.adjoint() + m1 * rho * m1.adjoint());
}

GateOp readout_rotation(ReadoutPart part, std::size_t detector) {
  if (part == ReadoutPart::kRe) return gates::hadamard(detector);
  return gates::u2(detector, std::numbers::pi / 2.0, -std::numbers::pi / 2.0);
}

}  // namespace qthermo
