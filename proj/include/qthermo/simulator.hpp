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

// Dense pure-state simulator for registers of at most four qubits.
//
// Index convention, used everywhere in this project: qubit q is bit q of the
// amplitude index, so qubit 0 is the fastest-varying bit. For a four-qubit
// register the amplitude of |s d e1 e2> (system, detector, env1, env2) lives
// at index s + 2 d + 4 e1 + 8 e2.
//
// Matrices that act on several listed qubits (two-qubit gates, reduced
// density matrices) are written with the FIRST listed qubit as the most
// significant bit, which matches the |ab> ket notation.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include "qthermo/gate_op.hpp"
#include "qthermo/matrix.hpp"

namespace qthermo {

inline constexpr std::size_t kMaxQubits = 4;

// Fixed role assignment of the four-qubit register.
struct QubitLayout {
  static constexpr std::size_t kSystem = 0;
  static constexpr std::size_t kDetector = 1;
  static constexpr std::size_t kEnv1 = 2;
  static constexpr std::size_t kEnv2 = 3;
  static constexpr std::size_t kSize = 4;
};

class StateVector {
 public:
  // |0...0> on n qubits. Throws ConfigError unless 1 <= n <= kMaxQubits.
  explicit StateVector(std::size_t n_qubits);

  // Throws ConfigError if the length is not 2^n, an entry is not finite, or
  // the norm differs from one by more than 1e-12.
  static StateVector from_amplitudes(std::size_t n_qubits, std::vector<Complex> amplitudes);

  // Product state; `factors[q]` is the single-qubit state of qubit q.
  static StateVector product(const std::vector<std::array<Complex, 2>>& factors);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  const std::vector<Complex>& amplitudes() const { return amplitudes_; }

  double norm() const;

  // In-place gate application; see apply_gate for the value-semantics form.
  void apply(const GateOp& gate);

 private:
  StateVector() = default;
  std::size_t n_qubits_ = 0;
  std::vector<Complex> amplitudes_;
};

// Density matrix of one or more qubits. Validated on construction: Hermitian
// and unit trace within 1e-12, and positive semidefinite down to -1e-10
// (Cholesky factorisation of rho + 1e-10 I must succeed).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m);

  static DensityMatrix from_pure(std::span<const Complex> psi);

  const Matrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix m_;
};

StateVector new_state(std::size_t n_qubits);

StateVector apply_gate(StateVector state, const GateOp& gate);
StateVector apply_circuit(StateVector state, const Circuit& circuit);

// Partial trace over every qubit not listed in `keep`. The returned matrix
// uses keep[0] as its most significant bit. Throws ConfigError on an empty,
// duplicate, or out-of-range keep list.
DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> keep);
DensityMatrix reduced_density(const StateVector& state, std::initializer_list<std::size_t> keep);

struct MeasureProbs {
  double p0 = 0.0;
  double p1 = 0.0;
};

MeasureProbs measure_probs(const StateVector& state, std::size_t qubit);

// Reproducible random stream. Substreams are derived from a master seed and a
// path of small integers (scheme id, chi index, readout variant ...):
//
//   h = splitmix64(master); for each c in path: h = splitmix64(h ^ c)
//
// and the engine is std::mt19937_64 seeded with h. The derived stream depends
// only on (master, path), never on the order in which streams are created.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master, std::initializer_list<std::uint64_t> path);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

struct Counts {
  std::int64_t n0 = 0;
  std::int64_t n1 = 0;
};

// Binomial draw of `shots` two-outcome measurements with P(0) = p0. Throws
// ConfigError if shots < 1 or p0 is outside [0, 1].
Counts sample_counts(double p0, std::int64_t shots, RngStream& rng);

}  // namespace qthermo
