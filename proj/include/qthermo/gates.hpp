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

// Gate library: hardware-style primitives (H, u1, u2, CNOT, controlled Ry)
// and the composite sequences used by the detection schemes.

#pragma once

#include <cstddef>

#include "qthermo/gate_op.hpp"
#include "qthermo/simulator.hpp"

namespace qthermo {

namespace gates {

GateOp hadamard(std::size_t q);
GateOp phase(std::size_t q, double theta);
// IBM convention: u2(a, b) = 1/sqrt2 [[1, -e^{ib}], [e^{ia}, e^{i(a+b)}]].
GateOp u2(std::size_t q, double a, double b);
GateOp cnot(std::size_t control, std::size_t target);
// Rotation on `target` when `control` is |1>:
//   |0> -> cos(theta/2)|0> + sin(theta/2)|1>,  |1> -> cos(theta/2)|1> - sin(theta/2)|0>.
GateOp controlled_rotation(std::size_t control, std::size_t target, double theta);

}  // namespace gates

// exp(-i alpha sigma_x) on qubit q, closed form.
GateOp drive_x(double alpha, std::size_t q = QubitLayout::kSystem);
// exp(-i beta sigma_z) on qubit q, closed form.
GateOp drive_z(double beta, std::size_t q = QubitLayout::kSystem);

// H, u1(2 angle), H for basis X; u1(2 angle) for basis Z. Equals the closed-form
// drive up to the global phase e^{i angle}.
Circuit drive_decomposition(Basis basis, double angle, std::size_t q = QubitLayout::kSystem);

// exp(i sign chi sigma_basis (x) Sigma_z) on (system, detector). For basis Z
// the matrix is diag(e^{i chi}, e^{-i chi}, e^{-i chi}, e^{i chi}) at sign +1.
// `sign` must be +1 or -1.
GateOp coupling_gate(Basis basis, int sign, double chi,
                     std::size_t system = QubitLayout::kSystem,
                     std::size_t detector = QubitLayout::kDetector);

// CNOT(s, d) . u1_d(-2 sign chi) . CNOT(s, d), wrapped in H_s for basis X.
// Equals coupling_gate up to the global phase e^{-i sign chi}.
Circuit coupling_decomposition(Basis basis, int sign, double chi,
                               std::size_t system = QubitLayout::kSystem,
                               std::size_t detector = QubitLayout::kDetector);

// Initial-state preparation u1(phi + pi/2) H u1(theta) H (H acts first):
// |0> -> cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> up to global phase.
Circuit init_system(double theta, double phi, std::size_t q = QubitLayout::kSystem);

// Engineered relaxation of the system towards |0> (basis Z) or |+> (basis X)
// with probability p, using an environment qubit that starts in |0>.
struct ChannelSpec {
  double p = 0.0;
  Basis basis = Basis::kZ;
  std::size_t env = QubitLayout::kEnv2;

  // Throws ConfigError naming `p` if p is outside [0, 1] or not finite.
  void validate() const;
};

// Controlled-rotation angle that makes the CNOT-CRy-CNOT sequence reproduce
// the cold damping map: cos(theta/2) = sqrt(1 - p).
double relaxation_angle(double p);

// CNOT(env -> s) . CRy(s -> env, relaxation_angle(p)) . CNOT(env -> s),
// conjugated by H on the system for basis X.
Circuit relaxation_circuit(const ChannelSpec& spec, std::size_t system = QubitLayout::kSystem);

// Operator-sum form of the cold amplitude-damping channel in the
// computational basis:
//   M0 = diag(1, sqrt(1-p)),  M1 = [[0, sqrt p], [0, 0]],
//   rho -> M0 rho M0^dag + M1 rho M1^dag.
// Independent of relaxation_circuit; used as its oracle.
DensityMatrix kraus_oracle(double p, const DensityMatrix& rho_in);

enum class ReadoutPart { kRe, kIm };

// Rotation applied to the detector before a computational-basis measurement.
// Re: Hadamard. Im: u2(pi/2, -pi/2) = exp(+i pi sigma_x / 4).
GateOp readout_rotation(ReadoutPart part, std::size_t detector = QubitLayout::kDetector);

// After readout_rotation(part), p0 - p1 on the detector equals
//   Re: 2 Re <0|rho_D|1>,     Im: kImReadoutSign * 2 Im <0|rho_D|1>.
// The sign was calibrated against the exact detector coherence of a
// reference state (see the gates tests) and is frozen here.
inline constexpr double kImReadoutSign = 1.0;

}  // namespace qthermo
