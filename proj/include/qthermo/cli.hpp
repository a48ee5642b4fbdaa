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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qthermo/protocol.hpp"

namespace qthermo {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitIo = 3,
  kExitAnalysis = 4,
};

// Sets one configuration field from its text form. Keys: theta, phi, alpha,
// beta, p, chi_max, dchi, shots, mode, seed. Throws ConfigError naming the key.
void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` file, one key per line, `#` starts a comment.
ExperimentConfig load_config_file(const std::filesystem::path& path,
                                  ExperimentConfig base = ExperimentConfig{});

struct RunManifest {
  ExperimentConfig config;
  std::vector<SchemeKind> schemes;
  std::vector<std::filesystem::path> outputs;
  std::string started_at;
  std::string finished_at;
};

// Per scheme: qcgf_<s>.csv, qpdf_<s>.csv, qpdf_fejer_<s>.csv, peaks_<s>.json,
// moments_<s>.json; plus run_summary.json (with a conservation report when all
// three schemes ran).
RunManifest cmd_run(const std::vector<SchemeKind>& schemes, const ExperimentConfig& cfg,
                    const std::filesystem::path& out_dir);

// averages_vs_p.csv with columns p,du,du_err,w,w_err,q,q_err,tmp_du,tmp_w,tmp_q.
std::filesystem::path cmd_sweep_p(const std::vector<double>& p_values, const ExperimentConfig& cfg,
                                  const std::filesystem::path& out_dir);

// tmp_dist.csv and tmp_averages.json.
std::vector<std::filesystem::path> cmd_tmp(const ExperimentConfig& cfg,
                                           const std::filesystem::path& out_dir);

// Recomputes qpdf/peaks/moments from a stored QCGF CSV. `cfg` supplies mode and
// shots for error bars; the grid comes from the file.
std::vector<std::filesystem::path> cmd_analyze(const std::filesystem::path& qcgf_csv,
                                               SchemeKind scheme, const ExperimentConfig& cfg,
                                               const std::filesystem::path& out_dir);

// Full command-line entry point; args exclude the program name. Returns an
// ExitCode.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qthermo
