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

#include "qthermo/tmp_oracle.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "qthermo/errors.hpp"
#include "qthermo/gates.hpp"
#include "qthermo/numfmt.hpp"

namespace qthermo {

namespace {

// Register of the oracle: system, env1, env2.
constexpr std::size_t kSys = 0;
constexpr std::size_t kE1 = 1;
constexpr std::size_t kE2 = 2;

}  // namespace

std::map<double, double> TmpDistribution::du_mass() const {
  std::map<double, double> m;
  for (const auto& o : outcomes) m[o.du()] += o.probability;
  return m;
}

std::map<double, double> TmpDistribution::q_mass() const {
  std::map<double, double> m;
  for (const auto& o : outcomes) m[o.q()] += o.probability;
  return m;
}

std::map<double, double> TmpDistribution::w_mass() const {
  std::map<double, double> m;
  for (const auto& o : outcomes) m[o.w()] += o.probability;
  return m;
}

std::map<std::pair<double, double>, double> TmpDistribution::joint_mass() const {
  std::map<std::pair<double, double>, double> m;
  for (const auto& o : outcomes) m[{o.du(), o.q()}] += o.probability;
  return m;
}

double tmp_plus_weight(const ExperimentConfig& cfg) {
  return 0.5 * (1.0 + std::sin(cfg.theta) * std::cos(cfg.phi));
}

TmpDistribution tmp_distribution(const ExperimentConfig& cfg) {
  cfg.validate();
  Circuit evolution{drive_x(cfg.alpha, kSys)};
  append(evolution, relaxation_circuit({cfg.p, Basis::kX, kE1}, kSys));
  evolution.push_back(drive_z(cfg.beta, kSys));
  append(evolution, relaxation_circuit({cfg.p, Basis::kZ, kE2}, kSys));

  const double s = 1.0 / std::sqrt(2.0);
  const double w_plus = tmp_plus_weight(cfg);

  TmpDistribution dist;
  for (int x_eigen : {+1, -1}) {
    const double weight = x_eigen == 1 ? w_plus : 1.0 - w_plus;
    StateVector psi = StateVector::product({{s, x_eigen * s}, {1.0, 0.0}, {1.0, 0.0}});
    psi = apply_circuit(std::move(psi), evolution);
    for (std::size_t i = 0; i < psi.size(); ++i) {
      TmpOutcome o;
      o.initial_energy = eigen_energy(x_eigen);
      const int sys_bit = static_cast<int>((i >> kSys) & 1U);
      o.final_energy = eigen_energy(sys_bit == 0 ? 1 : -1);
      o.q1 = static_cast<int>((i >> kE1) & 1U);
      o.q2 = static_cast<int>((i >> kE2) & 1U);
      o.probability = weight * std::norm(psi[i]);
      dist.outcomes.push_back(o);
    }
  }
  return dist;
}

TmpAverages tmp_averages(const TmpDistribution& dist) {
  TmpAverages a;
  for (const auto& o : dist.outcomes) {
    a.du += o.probability * o.du();
    a.q += o.probability * o.q();
    a.w += o.probability * o.w();
  }
  return a;
}

TmpAverages sample_tmp_averages(const TmpDistribution& dist, std::int64_t shots, RngStream& rng) {
  if (shots < 1) throw ConfigError("shots", "must be >= 1, got " + std::to_string(shots));
  std::vector<double> probs;
  for (const auto& o : dist.outcomes) probs.push_back(o.probability);
  std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
  TmpAverages a;
  for (std::int64_t n = 0; n < shots; ++n) {
    const TmpOutcome& o = dist.outcomes[pick(rng.engine())];
    a.du += o.du();
    a.q += o.q();
    a.w += o.w();
  }
  const double inv = 1.0 / static_cast<double>(shots);
  a.du *= inv;
  a.q *= inv;
  a.w *= inv;
  return a;
}

void write_tmp_csv(const TmpDistribution& dist, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "du,q,w,prob\n";
  for (const auto& [key, prob] : dist.joint_mass()) {
    out << format_double(key.first) << ',' << format_double(key.second) << ','
        << format_double(key.first + key.second) << ',' << format_double(prob) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qthermo
