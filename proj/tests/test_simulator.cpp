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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "qthermo/errors.hpp"
#include "qthermo/gates.hpp"
#include "qthermo/simulator.hpp"

using namespace qthermo;

namespace {

std::vector<Complex> random_amplitudes(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<Complex> a(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& x : a) {
    x = {g(rng), g(rng)};
    norm += std::norm(x);
  }
  for (auto& x : a) x /= std::sqrt(norm);
  return a;
}

// Full 2^n x 2^n operator for `gate`, built entry by entry from bit patterns.
Matrix embed(const GateOp& gate, std::size_t n) {
  const std::size_t dim = std::size_t{1} << n;
  const auto& qs = gate.qubits();
  const std::size_t k = qs.size();
  auto sub_index = [&](std::size_t full) {
    std::size_t s = 0;
    for (std::size_t j = 0; j < k; ++j) s = (s << 1) | ((full >> qs[j]) & 1U);
    return s;
  };
  auto rest_equal = [&](std::size_t a, std::size_t b) {
    std::size_t mask = 0;
    for (auto q : qs) mask |= std::size_t{1} << q;
    return (a & ~mask) == (b & ~mask);
  };
  Matrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (rest_equal(r, c)) m(r, c) = gate.matrix()(sub_index(r), sub_index(c));
  return m;
}

std::vector<Complex> mat_vec(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size());
  for (std::size_t r = 0; r < v.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) out[r] += m(r, c) * v[c];
  return out;
}

std::vector<GateOp> sample_gates() {
  return {gates::hadamard(0),
          gates::hadamard(3),
          gates::phase(1, 0.3),
          gates::u2(2, 0.4, -1.1),
          gates::cnot(0, 1),
          gates::cnot(3, 0),
          gates::controlled_rotation(2, 1, 0.9),
          coupling_gate(Basis::kX, 1, 0.37, 0, 1),
          coupling_gate(Basis::kZ, -1, 1.3, 3, 2),
          drive_x(0.8, 2)};
}

}  // namespace

TEST(StateVector, StartsInAllZero) {
  StateVector psi(4);
  ASSERT_EQ(psi.size(), 16u);
  EXPECT_EQ(psi[0], Complex(1.0));
  for (std::size_t i = 1; i < psi.size(); ++i) EXPECT_EQ(psi[i], Complex(0.0));
}

TEST(StateVector, RejectsBadQubitCounts) {
  EXPECT_THROW(StateVector(0), ConfigError);
  EXPECT_THROW(StateVector(5), ConfigError);
  EXPECT_NO_THROW(StateVector(1));
}

TEST(StateVector, FromAmplitudesValidates) {
  EXPECT_THROW(StateVector::from_amplitudes(2, {1.0, 0.0, 0.0}), ConfigError);
  EXPECT_THROW(StateVector::from_amplitudes(1, {1.0, 1.0}), ConfigError);
  EXPECT_THROW(StateVector::from_amplitudes(1, {NAN, 0.0}), ConfigError);
}

TEST(StateVector, QubitZeroIsLowBit) {
  StateVector psi = apply_gate(StateVector(3), gates::hadamard(1));
  EXPECT_NEAR(std::abs(psi[0]), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(psi[2]), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(StateVector, FirstListedQubitIsHighBitOfGateMatrix) {
  // X on the first listed qubit, identity on the second.
  const Matrix xi = pauli::x().kron(Matrix::identity(2));
  GateOp g(GateKind::kCnot, {2, 0}, {}, xi);
  StateVector psi = apply_gate(StateVector(3), g);
  EXPECT_NEAR(std::abs(psi[4]), 1.0, 1e-15);
}

TEST(StateVector, CnotFlipsTargetWhenControlSet) {
  StateVector psi = StateVector::product({{0.0, 1.0}, {1.0, 0.0}});
  psi = apply_gate(psi, gates::cnot(0, 1));
  EXPECT_NEAR(std::abs(psi[3]), 1.0, 1e-15);
  psi = apply_gate(psi, gates::cnot(1, 0));
  EXPECT_NEAR(std::abs(psi[2]), 1.0, 1e-15);
}

TEST(StateVector, MatchesDenseOperatorOnRandomStates) {
  std::mt19937_64 rng(7);
  for (const GateOp& g : sample_gates()) {
    const auto amps = random_amplitudes(4, rng);
    const StateVector out = apply_gate(StateVector::from_amplitudes(4, amps), g);
    const auto ref = mat_vec(embed(g, 4), amps);
    for (std::size_t i = 0; i < ref.size(); ++i)
      EXPECT_NEAR(std::abs(out[i] - ref[i]), 0.0, 1e-14) << g.name() << " i=" << i;
  }
}

TEST(StateVector, GatesPreserveNorm) {
  std::mt19937_64 rng(11);
  for (const GateOp& g : sample_gates()) {
    EXPECT_TRUE(g.matrix().is_unitary(1e-12)) << g.name();
    const StateVector out = apply_gate(StateVector::from_amplitudes(4, random_amplitudes(4, rng)), g);
    EXPECT_NEAR(out.norm(), 1.0, 1e-12) << g.name();
  }
}

TEST(StateVector, GateOnMissingQubitIsInternalError) {
  StateVector psi(2);
  EXPECT_THROW(psi.apply(gates::hadamard(3)), InternalError);
}

TEST(GateOp, RejectsNonUnitaryAndMismatchedShapes) {
  EXPECT_THROW(GateOp(GateKind::kPhase, {0}, {}, Matrix(2, {1.0, 0.0, 0.0, 2.0})), InternalError);
  EXPECT_THROW(GateOp(GateKind::kCnot, {0}, {}, Matrix::identity(4)), InternalError);
  EXPECT_THROW(GateOp(GateKind::kCnot, {1, 1}, {}, Matrix::identity(4)), InternalError);
  EXPECT_THROW(GateOp(GateKind::kPhase, {0}, {INFINITY}, Matrix::identity(2)), InternalError);
}

TEST(ReducedDensity, MatchesBruteForcePartialTrace) {
  std::mt19937_64 rng(3);
  const auto amps = random_amplitudes(4, rng);
  const StateVector psi = StateVector::from_amplitudes(4, amps);
  const std::vector<std::vector<std::size_t>> keeps = {{0}, {3}, {1, 0}, {0, 1}, {2, 3, 0}};
  for (const auto& keep : keeps) {
    const DensityMatrix rho = reduced_density(psi, std::span<const std::size_t>(keep));
    const std::size_t d = std::size_t{1} << keep.size();
    ASSERT_EQ(rho.dim(), d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) {
        Complex acc = 0.0;
        for (std::size_t i = 0; i < 16; ++i)
          for (std::size_t j = 0; j < 16; ++j) {
            bool match = true;
            std::size_t ri = 0;
            std::size_t cj = 0;
            for (std::size_t q = 0; q < 4; ++q) {
              const bool kept = std::find(keep.begin(), keep.end(), q) != keep.end();
              if (!kept && ((i >> q) & 1U) != ((j >> q) & 1U)) match = false;
            }
            if (!match) continue;
            for (std::size_t k = 0; k < keep.size(); ++k) {
              ri = (ri << 1) | ((i >> keep[k]) & 1U);
              cj = (cj << 1) | ((j >> keep[k]) & 1U);
            }
            if (ri == r && cj == c) acc += amps[i] * std::conj(amps[j]);
          }
        EXPECT_NEAR(std::abs(rho(r, c) - acc), 0.0, 1e-14);
      }
  }
}

TEST(ReducedDensity, TraceIsOneForEveryKeepSet) {
  std::mt19937_64 rng(5);
  const StateVector psi = StateVector::from_amplitudes(4, random_amplitudes(4, rng));
  for (unsigned mask = 1; mask < 16; ++mask) {
    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < 4; ++q)
      if (mask & (1U << q)) keep.push_back(q);
    const DensityMatrix rho = reduced_density(psi, std::span<const std::size_t>(keep));
    EXPECT_NEAR(std::abs(rho.matrix().trace() - 1.0), 0.0, 1e-12);
  }
}

TEST(ReducedDensity, RejectsBadKeepLists) {
  StateVector psi(2);
  EXPECT_THROW(reduced_density(psi, {}), ConfigError);
  EXPECT_THROW(reduced_density(psi, {0, 0}), ConfigError);
  EXPECT_THROW(reduced_density(psi, {2}), ConfigError);
}

TEST(DensityMatrix, ValidatesPhysicality) {
  EXPECT_THROW(DensityMatrix(Matrix(2, {0.5, 0.3, 0.1, 0.5})), ConfigError);
  EXPECT_THROW(DensityMatrix(Matrix(2, {0.6, 0.0, 0.0, 0.6})), ConfigError);
  EXPECT_THROW(DensityMatrix(Matrix(2, {1.5, 0.0, 0.0, -0.5})), ConfigError);
  EXPECT_NO_THROW(DensityMatrix(Matrix(2, {0.5, 0.5, 0.5, 0.5})));
}

TEST(Measure, ProbabilitiesOfSingleQubit) {
  const double c = std::cos(0.3);
  const double s = std::sin(0.3);
  const StateVector psi = StateVector::product({{1.0, 0.0}, {c, s}});
  const MeasureProbs m = measure_probs(psi, 1);
  EXPECT_NEAR(m.p0, c * c, 1e-15);
  EXPECT_NEAR(m.p1, s * s, 1e-15);
  EXPECT_THROW(measure_probs(psi, 2), InternalError);
}

TEST(Sampling, SameStreamSameCounts) {
  RngStream a = RngStream::derive(42, {0, 17, 1});
  RngStream b = RngStream::derive(42, {0, 17, 1});
  for (int i = 0; i < 5; ++i) EXPECT_EQ(sample_counts(0.3, 8000, a).n0, sample_counts(0.3, 8000, b).n0);
}

TEST(Sampling, DistinctPathsGiveDistinctStreams) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t k = 0; k < 50; ++k)
    for (std::uint64_t part : {0u, 1u}) firsts.insert(RngStream::derive(42, {0, k, part}).engine()());
  EXPECT_EQ(firsts.size(), 100u);
}

TEST(Sampling, CountsSumToShotsAndHandleEdges) {
  RngStream rng(9);
  const Counts c = sample_counts(0.37, 1234, rng);
  EXPECT_EQ(c.n0 + c.n1, 1234);
  EXPECT_EQ(sample_counts(1.0, 100, rng).n0, 100);
  EXPECT_EQ(sample_counts(0.0, 100, rng).n0, 0);
  EXPECT_THROW(sample_counts(0.5, 0, rng), ConfigError);
  EXPECT_THROW(sample_counts(1.2, 10, rng), ConfigError);
}

TEST(Sampling, BinomialMeanAndSpreadOverSeeds) {
  const double p0 = 0.3;
  const std::int64_t shots = 8000;
  const int seeds = 400;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int s = 0; s < seeds; ++s) {
    RngStream rng = RngStream::derive(1, {static_cast<std::uint64_t>(s)});
    const double f = static_cast<double>(sample_counts(p0, shots, rng).n0) / shots;
    sum += f;
    sum2 += f * f;
  }
  const double mean = sum / seeds;
  const double sd = std::sqrt(sum2 / seeds - mean * mean);
  const double sigma = std::sqrt(p0 * (1 - p0) / shots);
  EXPECT_NEAR(mean, p0, 4.0 * sigma / std::sqrt(seeds));
  EXPECT_NEAR(sd / sigma, 1.0, 0.15);
}
