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

// Two-measurement protocol reference: projective energy measurement at the
// start (sigma_x basis) and at the end (sigma_z basis) of the same driven,
// dissipative evolution, plus a readout of both environment qubits.
//
// The initial measurement is modelled by classical mixing over |+> and |->
// with Born weights. Each branch is propagated on a three-qubit register
// (system, env1, env2) and all eight final basis outcomes are enumerated
// exactly.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "qthermo/protocol.hpp"
#include "qthermo/simulator.hpp"

namespace qthermo {

struct TmpOutcome {
  double initial_energy = 0.0;  // -1/2 for |+>, +1/2 for |->
  double final_energy = 0.0;    // -1/2 for |0>, +1/2 for |1>
  int q1 = 0;                   // env1 quanta
  int q2 = 0;                   // env2 quanta
  double probability = 0.0;

  double du() const { return final_energy - initial_energy; }
  double q() const { return static_cast<double>(q1 + q2); }
  double w() const { return du() + q(); }
};

struct TmpDistribution {
  std::vector<TmpOutcome> outcomes;

  std::map<double, double> du_mass() const;
  std::map<double, double> q_mass() const;
  std::map<double, double> w_mass() const;
  // Joint mass over (du, q); w is implied.
  std::map<std::pair<double, double>, double> joint_mass() const;
};

// Born weight of the |+> branch: (1 + sin(theta) cos(phi)) / 2.
double tmp_plus_weight(const ExperimentConfig& cfg);

TmpDistribution tmp_distribution(const ExperimentConfig& cfg);

struct TmpAverages {
  double du = 0.0;
  double q = 0.0;
  double w = 0.0;
};

TmpAverages tmp_averages(const TmpDistribution& dist);

// Finite-shot estimate drawn from the exact outcome distribution.
TmpAverages sample_tmp_averages(const TmpDistribution& dist, std::int64_t shots, RngStream& rng);

// CSV with header `du,q,w,prob`, one row per distinct (du, q) pair.
void write_tmp_csv(const TmpDistribution& dist, const std::filesystem::path& path);

}  // namespace qthermo
