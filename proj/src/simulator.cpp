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

#include "qthermo/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

constexpr double kNormTol = 1e-12;

void check_qubit(std::size_t qubit, std::size_t n_qubits, const char* what) {
  if (qubit >= n_qubits)
    throw InternalError(std::string(what) + ": qubit index " + std::to_string(qubit) +
                        " out of range for " + std::to_string(n_qubits) + "-qubit register");
}

bool cholesky_psd(const Matrix& m, double shift) {
  const std::size_t n = m.dim();
  Matrix l(n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j).real() + shift;
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (d <= 0.0) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return true;
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits)
    throw ConfigError("n_qubits", "must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                                      std::to_string(n_qubits));
  n_qubits_ = n_qubits;
  amplitudes_.assign(std::size_t{1} << n_qubits, Complex(0.0));
  amplitudes_[0] = 1.0;
}

StateVector StateVector::from_amplitudes(std::size_t n_qubits, std::vector<Complex> amplitudes) {
  StateVector s(n_qubits);
  if (amplitudes.size() != s.amplitudes_.size())
    throw ConfigError("amplitudes", "length must be 2^n_qubits");
  for (const auto& a : amplitudes)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ConfigError("amplitudes", "non-finite amplitude");
  s.amplitudes_ = std::move(amplitudes);
  if (std::abs(s.norm() - 1.0) > kNormTol)
    throw ConfigError("amplitudes", "state is not normalised");
  return s;
}

StateVector StateVector::product(const std::vector<std::array<Complex, 2>>& factors) {
  StateVector s(factors.size());
  for (std::size_t i = 0; i < s.amplitudes_.size(); ++i) {
    Complex a = 1.0;
    for (std::size_t q = 0; q < factors.size(); ++q) a *= factors[q][(i >> q) & 1U];
    s.amplitudes_[i] = a;
  }
  if (std::abs(s.norm() - 1.0) > kNormTol)
    throw ConfigError("factors", "product state is not normalised");
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amplitudes_) n2 += std::norm(a);
  return std::sqrt(n2);
}

void StateVector::apply(const GateOp& gate) {
  for (std::size_t q : gate.qubits()) check_qubit(q, n_qubits_, "apply_gate");
  const Matrix& u = gate.matrix();
  const std::size_t dim = amplitudes_.size();

  if (gate.arity() == 1) {
    const std::size_t bit = std::size_t{1} << gate.qubits()[0];
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & bit) continue;
      const Complex a0 = amplitudes_[i];
      const Complex a1 = amplitudes_[i | bit];
      amplitudes_[i] = u(0, 0) * a0 + u(0, 1) * a1;
      amplitudes_[i | bit] = u(1, 0) * a0 + u(1, 1) * a1;
    }
    return;
  }

  // Two-qubit gate: qubits()[0] is the high bit of the local 2-bit index.
  const std::size_t hi = std::size_t{1} << gate.qubits()[0];
  const std::size_t lo = std::size_t{1} << gate.qubits()[1];
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & (hi | lo)) continue;
    const std::array<std::size_t, 4> idx = {i, i | lo, i | hi, i | hi | lo};
    std::array<Complex, 4> in{};
    for (std::size_t k = 0; k < 4; ++k) in[k] = amplitudes_[idx[k]];
    for (std::size_t r = 0; r < 4; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < 4; ++c) acc += u(r, c) * in[c];
      amplitudes_[idx[r]] = acc;
    }
  }
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  const std::size_t n = m_.dim();
  if (n == 0) throw ConfigError("rho", "empty density matrix");
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const Complex v = m_(r, c);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw ConfigError("rho", "non-finite entry");
      if (std::abs(v - std::conj(m_(c, r))) > 1e-12)
        throw ConfigError("rho", "matrix is not Hermitian");
    }
  if (std::abs(m_.trace() - 1.0) > 1e-12) throw ConfigError("rho", "trace is not one");
  if (!cholesky_psd(m_, 1e-10)) throw ConfigError("rho", "matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::from_pure(std::span<const Complex> psi) {
  Matrix m(psi.size());
  for (std::size_t r = 0; r < psi.size(); ++r)
    for (std::size_t c = 0; c < psi.size(); ++c) m(r, c) = psi[r] * std::conj(psi[c]);
  return DensityMatrix(std::move(m));
}

StateVector new_state(std::size_t n_qubits) { return StateVector(n_qubits); }

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

StateVector apply_circuit(StateVector state, const Circuit& circuit) {
  for (const auto& g : circuit) state.apply(g);
  return state;
}

DensityMatrix reduced_density(const StateVector& state, std::span<const std::size_t> keep) {
  const std::size_t n = state.n_qubits();
  if (keep.empty()) throw ConfigError("keep", "empty qubit list");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n) throw ConfigError("keep", "qubit index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (keep[i] == keep[j]) throw ConfigError("keep", "duplicate qubit index");
  }

  std::size_t keep_mask = 0;
  for (std::size_t q : keep) keep_mask |= std::size_t{1} << q;
  const std::size_t k = keep.size();

  // Local index of a full-register basis index: keep[0] is the high bit.
  auto local = [&](std::size_t i) {
    std::size_t l = 0;
    for (std::size_t j = 0; j < k; ++j) l = (l << 1) | ((i >> keep[j]) & 1U);
    return l;
  };

  Matrix rho(std::size_t{1} << k);
  const std::size_t dim = state.size();
  for (std::size_t i = 0; i < dim; ++i) {
    const Complex ai = state[i];
    if (ai == Complex(0.0)) continue;
    const std::size_t rest = i & ~keep_mask;
    for (std::size_t j = 0; j < dim; ++j) {
      if ((j & ~keep_mask) != rest) continue;
      rho(local(i), local(j)) += ai * std::conj(state[j]);
    }
  }
  return DensityMatrix(std::move(rho));
}

DensityMatrix reduced_density(const StateVector& state, std::initializer_list<std::size_t> keep) {
  return reduced_density(state, std::span<const std::size_t>(keep.begin(), keep.size()));
}

MeasureProbs measure_probs(const StateVector& state, std::size_t qubit) {
  check_qubit(qubit, state.n_qubits(), "measure_probs");
  const std::size_t bit = std::size_t{1} << qubit;
  double p1 = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double w = std::norm(state[i]);
    total += w;
    if (i & bit) p1 += w;
  }
  p1 = std::clamp(p1 / total, 0.0, 1.0);
  return {1.0 - p1, p1};
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream RngStream::derive(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t c : path) h = splitmix64(h ^ c);
  return RngStream(h);
}

Counts sample_counts(double p0, std::int64_t shots, RngStream& rng) {
  if (shots < 1) throw ConfigError("shots", "must be >= 1, got " + std::to_string(shots));
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw ConfigError("p0", "must be in [0, 1]");
  std::binomial_distribution<std::int64_t> dist(shots, p0);
  const std::int64_t n0 = dist(rng.engine());
  return {n0, shots - n0};
}

}  // namespace qthermo
