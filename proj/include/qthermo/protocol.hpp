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

// Detection schemes for internal-energy change, work and dissipated heat.
//
// Physical conventions (energies in units of the level splitting):
//   * The system Hamiltonian is H_x = -sigma_x / 2 before the quench and
//     H_z = -sigma_z / 2 after it, so |+> and |0> are the ground states and the
//     engineered relaxation lowers the system energy by one quantum per
//     environment excitation.
//   * The detector Hamiltonian is H_D = Sigma_z / 2 and the detector starts in
//     (|0> + |1>) / sqrt2.
//   * An impulsive coupling U(+-chi) = exp(+- i chi H_S (x) H_D) equals
//     coupling_gate(basis, -+1, chi / 4).
// With these choices G(chi) = sum_E c_E e^{i chi E} with E the energy change
// and -i G'(0) = <E>.
//
// Gate order per scheme, first applied first (U(-chi, x) written couple(x,-)):
//   du: couple(x,-) Ux Rx Uz Rz couple(z,+)
//   w : Ux Rx couple(x,-) couple(z,+) Uz Rz
//   q : couple(x,+) Ux Rx couple(x,-) couple(z,+) Uz Rz couple(z,-)
// The heat couplings carry reversed signs, so the heat scheme reports energy
// given up by the system, and <dU> + <Q> - <W> = 0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "qthermo/gate_op.hpp"
#include "qthermo/gates.hpp"
#include "qthermo/matrix.hpp"

namespace qthermo {

enum class SchemeKind { kInternalEnergy, kWork, kHeat };

// "du", "w", "q".
std::string scheme_tag(SchemeKind scheme);
// Throws ConfigError naming `scheme` for unknown tags.
SchemeKind parse_scheme(const std::string& tag);
inline constexpr SchemeKind kAllSchemes[] = {SchemeKind::kInternalEnergy, SchemeKind::kWork,
                                             SchemeKind::kHeat};

enum class Mode { kExact, kSampled };
std::string mode_tag(Mode mode);
Mode parse_mode(const std::string& tag);

// Energy of a sigma eigenstate (eigenvalue +-1) under H = -sigma / 2.
inline double eigen_energy(int sigma_eigenvalue) { return -0.5 * sigma_eigenvalue; }

struct ExperimentConfig {
  double theta = 0.7;
  double phi = 1.2;
  double alpha = 1.0;
  double beta = 0.5;
  double p = 0.0;
  double chi_max = 100.0;
  double dchi = 0.1;
  std::int64_t shots = 8000;
  Mode mode = Mode::kExact;
  std::uint64_t seed = 1;

  // Throws ConfigError naming the first offending field.
  void validate() const;

  // Number of grid points with chi >= 0: floor(chi_max / dchi) + 1.
  std::size_t positive_points() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Sampled quasi-characteristic function on a grid symmetric about zero.
struct QcgfTable {
  SchemeKind scheme = SchemeKind::kInternalEnergy;
  ExperimentConfig config;
  std::vector<double> grid;
  std::vector<Complex> values;

  std::size_t size() const { return grid.size(); }
  std::size_t center() const { return grid.size() / 2; }
  double dchi() const;
};

// U(sign * chi) on (system, detector) in the given energy basis.
GateOp energy_coupling(Basis basis, int sign, double chi);

// Preparation of system and detector followed by the scheme's gate sequence.
// No readout rotation.
Circuit build_scheme_circuit(SchemeKind scheme, double chi, const ExperimentConfig& cfg);

// G = <0|rho_D|1> / (1/2) from the final detector reduced state.
Complex run_exact(const Circuit& circuit);

// Shot-sampled estimate of G: the circuit is run once per readout part with
// `shots` detector measurements each; every part estimates 2 n0 / shots - 1.
// Throws ConfigError if shots < 1.
Complex run_sampled(const Circuit& circuit, std::int64_t shots, RngStream& re_stream,
                    RngStream& im_stream);

// Stream used for (scheme, chi index, readout part) in sampled sweeps.
RngStream sampling_stream(std::uint64_t master_seed, SchemeKind scheme, std::size_t chi_index,
                          ReadoutPart part);

// G at chi_k = k dchi for k = 0..K, extended to negative chi by
// G(-chi) = conj(G(chi)). `threads` = 0 uses worker_count().
QcgfTable sweep(SchemeKind scheme, const ExperimentConfig& cfg, std::size_t threads = 0);

// Direct density-matrix expectations of the uncoupled evolution.
//   du: <H_z>_final - <H_x>_initial
//   q : total excitation number of both environment qubits
//   w : du + q
struct DirectObservables {
  double du = 0.0;
  double q = 0.0;
  double w = 0.0;
};
DirectObservables direct_observables(const ExperimentConfig& cfg);

// Hardware threads, capped by the QTHERMO_THREADS environment variable.
std::size_t worker_count();

// Runs body(i) for i in [0, n) on up to `threads` workers. Exceptions are
// rethrown on the calling thread.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& body);

// CSV with header `chi,re_g,im_g`, full symmetric grid, 17 significant digits.
void write_qcgf_csv(const QcgfTable& table, const std::filesystem::path& path);
// Throws IoError if the file cannot be opened, AnalysisError (with line and
// column) if it is malformed or its grid is not uniform and symmetric.
// The config snapshot of the result only carries chi_max and dchi recovered
// from the grid; everything else keeps its default.
QcgfTable read_qcgf_csv(const std::filesystem::path& path,
                        SchemeKind scheme = SchemeKind::kInternalEnergy);

}  // namespace qthermo
