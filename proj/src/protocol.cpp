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

#include "qthermo/protocol.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "qthermo/errors.hpp"
#include "qthermo/numfmt.hpp"
#include "qthermo/simulator.hpp"

namespace qthermo {

namespace {

constexpr std::size_t kMaxGridPoints = 10'000'000;

void require_finite(double v, const char* field) {
  if (!std::isfinite(v)) throw ConfigError(field, "must be finite");
}

std::uint64_t scheme_id(SchemeKind scheme) { return static_cast<std::uint64_t>(scheme); }

// Detector in (|0> + |1>)/sqrt2, system in the configured initial state.
Circuit preparation(const ExperimentConfig& cfg) {
  Circuit c = init_system(cfg.theta, cfg.phi, QubitLayout::kSystem);
  c.push_back(gates::hadamard(QubitLayout::kDetector));
  return c;
}

struct Segments {
  GateOp ux;
  Circuit rx;
  GateOp uz;
  Circuit rz;
};

Segments dissipative_segments(const ExperimentConfig& cfg) {
  return {drive_x(cfg.alpha), relaxation_circuit({cfg.p, Basis::kX, QubitLayout::kEnv1}),
          drive_z(cfg.beta), relaxation_circuit({cfg.p, Basis::kZ, QubitLayout::kEnv2})};
}

}  // namespace

std::string scheme_tag(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::kInternalEnergy: return "du";
    case SchemeKind::kWork: return "w";
    case SchemeKind::kHeat: return "q";
  }
  return "?";
}

SchemeKind parse_scheme(const std::string& tag) {
  if (tag == "du") return SchemeKind::kInternalEnergy;
  if (tag == "w") return SchemeKind::kWork;
  if (tag == "q") return SchemeKind::kHeat;
  throw ConfigError("scheme", "expected one of du, w, q; got '" + tag + "'");
}

std::string mode_tag(Mode mode) { return mode == Mode::kExact ? "exact" : "sampled"; }

Mode parse_mode(const std::string& tag) {
  if (tag == "exact") return Mode::kExact;
  if (tag == "sampled") return Mode::kSampled;
  throw ConfigError("mode", "expected exact or sampled; got '" + tag + "'");
}

void ExperimentConfig::validate() const {
  require_finite(theta, "theta");
  require_finite(phi, "phi");
  require_finite(alpha, "alpha");
  require_finite(beta, "beta");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("p", "must be in [0, 1], got " + format_double(p));
  if (!(chi_max > 0.0) || !std::isfinite(chi_max))
    throw ConfigError("chi_max", "must be positive and finite, got " + format_double(chi_max));
  if (!(dchi > 0.0 && dchi <= chi_max))
    throw ConfigError("dchi", "must satisfy 0 < dchi <= chi_max, got " + format_double(dchi));
  if (chi_max / dchi > static_cast<double>(kMaxGridPoints))
    throw ConfigError("dchi", "grid would exceed " + std::to_string(kMaxGridPoints) + " points");
  if (mode == Mode::kSampled && shots < 1)
    throw ConfigError("shots", "must be >= 1 in sampled mode, got " + std::to_string(shots));
}

std::size_t ExperimentConfig::positive_points() const {
  return static_cast<std::size_t>(std::floor(chi_max / dchi + 1e-9)) + 1;
}

double QcgfTable::dchi() const {
  if (grid.size() < 2) throw AnalysisError("QCGF table has fewer than two grid points");
  return grid[center() + 1] - grid[center()];
}

GateOp energy_coupling(Basis basis, int sign, double chi) {
  return coupling_gate(basis, -sign, chi / 4.0);
}

Circuit build_scheme_circuit(SchemeKind scheme, double chi, const ExperimentConfig& cfg) {
  cfg.validate();
  Circuit c = preparation(cfg);
  Segments seg = dissipative_segments(cfg);
  switch (scheme) {
    case SchemeKind::kInternalEnergy:
      c.push_back(energy_coupling(Basis::kX, -1, chi));
      c.push_back(seg.ux);
      append(c, seg.rx);
      c.push_back(seg.uz);
      append(c, seg.rz);
      c.push_back(energy_coupling(Basis::kZ, +1, chi));
      break;
    case SchemeKind::kWork:
      c.push_back(seg.ux);
      append(c, seg.rx);
      c.push_back(energy_coupling(Basis::kX, -1, chi));
      c.push_back(energy_coupling(Basis::kZ, +1, chi));
      c.push_back(seg.uz);
      append(c, seg.rz);
      break;
    case SchemeKind::kHeat:
      c.push_back(energy_coupling(Basis::kX, +1, chi));
      c.push_back(seg.ux);
      append(c, seg.rx);
      c.push_back(energy_coupling(Basis::kX, -1, chi));
      c.push_back(energy_coupling(Basis::kZ, +1, chi));
      c.push_back(seg.uz);
      append(c, seg.rz);
      c.push_back(energy_coupling(Basis::kZ, -1, chi));
      break;
  }
  return c;
}

Complex run_exact(const Circuit& circuit) {
  const StateVector psi = apply_circuit(new_state(QubitLayout::kSize), circuit);
  const DensityMatrix rho_d = reduced_density(psi, {QubitLayout::kDetector});
  return rho_d(0, 1) / 0.5;
}

Complex run_sampled(const Circuit& circuit, std::int64_t shots, RngStream& re_stream,
                    RngStream& im_stream) {
  if (shots < 1) throw ConfigError("shots", "must be >= 1, got " + std::to_string(shots));
  const StateVector psi = apply_circuit(new_state(QubitLayout::kSize), circuit);
  auto estimate = [&](ReadoutPart part, RngStream& rng) {
    const StateVector rotated = apply_gate(psi, readout_rotation(part));
    const MeasureProbs probs = measure_probs(rotated, QubitLayout::kDetector);
    const Counts counts = sample_counts(probs.p0, shots, rng);
    return 2.0 * static_cast<double>(counts.n0) / static_cast<double>(shots) - 1.0;
  };
  const double re = estimate(ReadoutPart::kRe, re_stream);
  const double im = kImReadoutSign * estimate(ReadoutPart::kIm, im_stream);
  return {re, im};
}

RngStream sampling_stream(std::uint64_t master_seed, SchemeKind scheme, std::size_t chi_index,
                          ReadoutPart part) {
  return RngStream::derive(master_seed, {scheme_id(scheme), static_cast<std::uint64_t>(chi_index),
                                         part == ReadoutPart::kRe ? 0ULL : 1ULL});
}

QcgfTable sweep(SchemeKind scheme, const ExperimentConfig& cfg, std::size_t threads) {
  cfg.validate();
  const std::size_t n_pos = cfg.positive_points();
  std::vector<Complex> positive(n_pos);

  parallel_for(n_pos, threads == 0 ? worker_count() : threads, [&](std::size_t k) {
    const double chi = static_cast<double>(k) * cfg.dchi;
    const Circuit circuit = build_scheme_circuit(scheme, chi, cfg);
    if (cfg.mode == Mode::kExact) {
      positive[k] = run_exact(circuit);
    } else {
      RngStream re = sampling_stream(cfg.seed, scheme, k, ReadoutPart::kRe);
      RngStream im = sampling_stream(cfg.seed, scheme, k, ReadoutPart::kIm);
      positive[k] = run_sampled(circuit, cfg.shots, re, im);
    }
  });

  // Im G is odd, so the chi = 0 sample is real by construction.
  positive[0] = Complex(positive[0].real(), 0.0);

  QcgfTable table;
  table.scheme = scheme;
  table.config = cfg;
  const std::size_t k_max = n_pos - 1;
  table.grid.resize(2 * k_max + 1);
  table.values.resize(2 * k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    const double chi = static_cast<double>(k) * cfg.dchi;
    table.grid[k_max + k] = chi;
    table.grid[k_max - k] = -chi;
    table.values[k_max + k] = positive[k];
    table.values[k_max - k] = std::conj(positive[k]);
  }
  return table;
}

DirectObservables direct_observables(const ExperimentConfig& cfg) {
  cfg.validate();
  Circuit prep = init_system(cfg.theta, cfg.phi, QubitLayout::kSystem);
  const StateVector initial = apply_circuit(new_state(QubitLayout::kSize), prep);
  const Matrix h_x = pauli::x() * Complex(-0.5);
  const Matrix h_z = pauli::z() * Complex(-0.5);
  const double e_initial =
      (reduced_density(initial, {QubitLayout::kSystem}).matrix() * h_x).trace().real();

  Segments seg = dissipative_segments(cfg);
  Circuit evolution{seg.ux};
  append(evolution, seg.rx);
  evolution.push_back(seg.uz);
  append(evolution, seg.rz);
  const StateVector final_state = apply_circuit(initial, evolution);
  const double e_final =
      (reduced_density(final_state, {QubitLayout::kSystem}).matrix() * h_z).trace().real();

  DirectObservables out;
  out.du = e_final - e_initial;
  out.q = measure_probs(final_state, QubitLayout::kEnv1).p1 +
          measure_probs(final_state, QubitLayout::kEnv2).p1;
  out.w = out.du + out.q;
  return out;
}

std::size_t worker_count() {
  std::size_t n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QTHERMO_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
  }
  return n;
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& body) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  }
  pool.clear();
  if (error) std::rethrow_exception(error);
}

void write_qcgf_csv(const QcgfTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "chi,re_g,im_g\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out << format_double(table.grid[i]) << ',' << format_double(table.values[i].real()) << ','
        << format_double(table.values[i].imag()) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

QcgfTable read_qcgf_csv(const std::filesystem::path& path, SchemeKind scheme) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());

  auto fail = [&](std::size_t line, std::size_t column, const std::string& what) {
    std::ostringstream os;
    os << path.string() << ':' << line;
    if (column > 0) os << ": column " << column;
    os << ": " << what;
    throw AnalysisError(os.str());
  };

  QcgfTable table;
  table.scheme = scheme;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) fail(1, 0, "empty file, expected header chi,re_g,im_g");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "chi,re_g,im_g") fail(1, 0, "bad header '" + line + "', expected chi,re_g,im_g");

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != 3)
      fail(line_no, 0, "expected 3 fields, found " + std::to_string(fields.size()));
    double v[3];
    for (std::size_t c = 0; c < 3; ++c) {
      auto parsed = parse_double(fields[c]);
      if (!parsed || !std::isfinite(*parsed)) fail(line_no, c + 1, "not a finite number: '" + fields[c] + "'");
      v[c] = *parsed;
    }
    table.grid.push_back(v[0]);
    table.values.emplace_back(v[1], v[2]);
  }

  const std::size_t n = table.grid.size();
  if (n < 3 || n % 2 == 0)
    fail(line_no, 0, "grid must have an odd number (>= 3) of points, found " + std::to_string(n));
  const std::size_t c = n / 2;
  const double h = table.grid[c + 1] - table.grid[c];
  if (!(h > 0.0)) fail(c + 3, 1, "grid is not increasing");
  for (std::size_t k = 0; k <= c; ++k) {
    const double expected = static_cast<double>(k) * h;
    const double tol = 1e-9 * std::max(1.0, expected);
    if (std::abs(table.grid[c + k] - expected) > tol)
      fail(c + k + 2, 1, "grid is not uniform around chi = 0");
    if (std::abs(table.grid[c - k] + expected) > tol)
      fail(c - k + 2, 1, "grid is not symmetric about chi = 0");
  }
  table.config.dchi = h;
  table.config.chi_max = table.grid.back();
  return table;
}

}  // namespace qthermo
