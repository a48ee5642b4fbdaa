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

#include "qthermo/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "qthermo/errors.hpp"
#include "qthermo/numfmt.hpp"

namespace qthermo {

namespace {

void check_table(const QcgfTable& table) {
  if (table.grid.empty()) throw AnalysisError("QCGF table is empty");
  if (table.values.size() != table.grid.size())
    throw AnalysisError("QCGF table has mismatched grid and value lengths");
  if (table.grid.size() % 2 == 0) throw AnalysisError("QCGF grid is not symmetric (even length)");
  const std::size_t c = table.center();
  for (std::size_t k = 0; k <= c; ++k) {
    const double tol = 1e-9 * std::max(1.0, std::abs(table.grid[c + k]));
    if (std::abs(table.grid[c + k] + table.grid[c - k]) > tol)
      throw AnalysisError("QCGF grid is not symmetric about chi = 0");
  }
}

double sampled_error_unit(const ExperimentConfig& cfg) {
  if (cfg.mode != Mode::kSampled) return 0.0;
  return 1.0 / std::sqrt(static_cast<double>(cfg.shots));
}

// (1/N) sum_k G_k e^{-i chi_k E}.
Complex projection(const QcgfTable& table, double energy) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i)
    acc += table.values[i] * std::polar(1.0, -table.grid[i] * energy);
  return acc / static_cast<double>(table.size());
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

}  // namespace

double QpdfTable::total_mass() const { return trapezoid(energies, density); }

double QpdfTable::first_moment() const {
  std::vector<double> weighted(density.size());
  for (std::size_t i = 0; i < density.size(); ++i) weighted[i] = energies[i] * density[i];
  return trapezoid(energies, weighted);
}

std::vector<double> default_energy_grid() {
  std::vector<double> f(1001);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = -2.5 + 0.005 * static_cast<double>(i);
  return f;
}

QpdfTable qpdf(const QcgfTable& table, std::span<const double> energies, Window window) {
  check_table(table);
  if (energies.empty()) throw AnalysisError("qpdf: empty energy grid");

  const std::size_t n = table.size();
  const std::size_t c = table.center();
  const double dchi = table.size() > 1 ? table.dchi() : 1.0;
  std::vector<Complex> tapered(table.values);
  if (window == Window::kFejer) {
    const double span = static_cast<double>(c + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const double k = std::abs(static_cast<double>(i) - static_cast<double>(c));
      tapered[i] *= 1.0 - k / span;
    }
  }

  QpdfTable out;
  out.scheme = table.scheme;
  out.window = window;
  out.energies.assign(energies.begin(), energies.end());
  out.density.resize(energies.size());
  const double scale = dchi / (2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < energies.size(); ++j) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += tapered[i] * std::polar(1.0, -table.grid[i] * energies[j]);
    acc *= scale;
    out.density[j] = acc.real();
    out.max_imag_residue = std::max(out.max_imag_residue, std::abs(acc.imag()));
  }
  return out;
}

double PeakTable::weight_at(double energy) const {
  for (const auto& pk : peaks)
    if (near(pk.energy, energy)) return pk.weight;
  throw AnalysisError("no peak at E = " + format_double(energy));
}

double PeakTable::abs_sum() const {
  double s = 0.0;
  for (const auto& pk : peaks) s += std::abs(pk.weight);
  return s;
}

std::vector<double> peak_energies() {
  std::vector<double> e;
  for (int i = -4; i <= 4; ++i) e.push_back(0.5 * i);
  return e;
}

double dirichlet_kernel(std::size_t k_max, double dchi, double delta) {
  double acc = 1.0;
  for (std::size_t k = 1; k <= k_max; ++k) acc += 2.0 * std::cos(static_cast<double>(k) * dchi * delta);
  return acc / static_cast<double>(2 * k_max + 1);
}

PeakTable peak_weights(const QcgfTable& table) {
  check_table(table);
  PeakTable out;
  for (double e : peak_energies()) {
    const double w = projection(table, e).real();
    out.peaks.push_back({e, w});
    out.norm += w;
  }
  return out;
}

double crosstalk_floor(const QcgfTable& table, const PeakTable& peaks) {
  check_table(table);
  const double h = table.size() > 1 ? table.dchi() : 1.0;
  double worst = 0.0;
  for (int m = 1; m <= 8; ++m)
    worst = std::max(worst, std::abs(dirichlet_kernel(table.center(), h, 0.5 * m)));
  return worst * peaks.abs_sum();
}

PeakTable renormalize_peaks(const PeakTable& peaks) {
  if (std::abs(peaks.norm) < 1e-12) throw AnalysisError("peak norm vanishes; cannot renormalise");
  PeakTable out;
  for (const auto& pk : peaks.peaks) {
    out.peaks.push_back({pk.energy, pk.weight / peaks.norm});
    out.norm += out.peaks.back().weight;
  }
  return out;
}

std::string to_string(MomentMethod method) {
  switch (method) {
    case MomentMethod::kSlope: return "slope";
    case MomentMethod::kDerivative: return "derivative";
    case MomentMethod::kPeaks: return "peaks";
  }
  return "?";
}

MomentReport average_from_slope(const QcgfTable& table, double chi_bar) {
  check_table(table);
  if (chi_bar == 0.0) throw AnalysisError("slope point chi_bar must be nonzero");
  if (std::abs(chi_bar) > 0.5)
    throw AnalysisError("slope point chi_bar = " + format_double(chi_bar) +
                        " is outside the linear regime |chi_bar| <= 1/2");
  const auto it = std::find_if(table.grid.begin(), table.grid.end(), [&](double x) {
    return std::abs(x - chi_bar) < 1e-9 * std::max(1.0, std::abs(chi_bar));
  });
  if (it == table.grid.end())
    throw AnalysisError("slope point chi_bar = " + format_double(chi_bar) + " is not on the grid");
  const std::size_t i = static_cast<std::size_t>(it - table.grid.begin());

  MomentReport r;
  r.method = MomentMethod::kSlope;
  r.scheme = table.scheme;
  r.config = table.config;
  r.mean = table.values[i].imag() / table.grid[i];
  r.std_error = sampled_error_unit(table.config) / std::abs(table.grid[i]);
  return r;
}

MomentReport average_from_derivative(const QcgfTable& table) {
  check_table(table);
  if (table.size() < 3) throw AnalysisError("grid too coarse for a central difference");
  const std::size_t c = table.center();
  const double h = table.grid[c + 1] - table.grid[c];

  MomentReport r;
  r.method = MomentMethod::kDerivative;
  r.scheme = table.scheme;
  r.config = table.config;
  r.mean = (table.values[c + 1] - table.values[c - 1]).imag() / (2.0 * h);
  r.std_error = sampled_error_unit(table.config) / h;
  return r;
}

MomentReport average_from_peaks(const QcgfTable& table) {
  const PeakTable raw = peak_weights(table);
  if (std::abs(raw.norm) < 1e-12) throw AnalysisError("peak norm vanishes; cannot average");

  MomentReport r;
  r.method = MomentMethod::kPeaks;
  r.scheme = table.scheme;
  r.config = table.config;
  for (const auto& pk : raw.peaks) r.mean += pk.energy * pk.weight;
  r.mean /= raw.norm;

  // mean_raw = (1/N) sum_k [Re G_k a_k + Im G_k b_k] with a_k = sum_E E cos(chi_k E),
  // b_k = sum_E E sin(chi_k E). Samples at +-k are one measurement.
  const double unit = sampled_error_unit(table.config);
  if (unit > 0.0) {
    const std::size_t c = table.center();
    double var = 0.0;
    for (std::size_t k = 0; k <= c; ++k) {
      const double chi = table.grid[c + k];
      double a = 0.0;
      double b = 0.0;
      for (const auto& pk : raw.peaks) {
        a += pk.energy * std::cos(chi * pk.energy);
        b += pk.energy * std::sin(chi * pk.energy);
      }
      var += k == 0 ? a * a : 4.0 * (a * a + b * b);
    }
    const double n = static_cast<double>(table.size());
    r.std_error = unit * std::sqrt(var) / (n * std::abs(raw.norm));
  }
  return r;
}

MomentReport average_at_origin(SchemeKind scheme, const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentConfig local = cfg;
  local.chi_max = cfg.dchi;
  MomentReport r = average_from_derivative(sweep(scheme, local));
  r.config = cfg;
  return r;
}

bool NegativityReport::negative_near(double center, double radius) const {
  return std::any_of(regions.begin(), regions.end(), [&](const EnergyInterval& iv) {
    return iv.hi >= center - radius && iv.lo <= center + radius;
  });
}

NegativityReport negativity(const QpdfTable& table) {
  NegativityReport r;
  if (table.density.empty()) return r;
  for (std::size_t i = 0; i < table.density.size(); ++i) {
    const double f = table.energies[i];
    if (f >= kFloorWindowLo - 1e-12 && f <= kFloorWindowHi + 1e-12)
      r.ringing_floor = std::max(r.ringing_floor, std::abs(table.density[i]));
  }
  const auto min_it = std::min_element(table.density.begin(), table.density.end());
  r.min_density = *min_it;
  r.min_energy = table.energies[static_cast<std::size_t>(min_it - table.density.begin())];

  bool open = false;
  for (std::size_t i = 0; i < table.density.size(); ++i) {
    const double d = table.density[i];
    if (d < -r.ringing_floor) {
      if (!open) {
        r.regions.push_back({table.energies[i], table.energies[i], d});
        open = true;
      }
      auto& iv = r.regions.back();
      iv.hi = table.energies[i];
      iv.min_density = std::min(iv.min_density, d);
    } else {
      open = false;
    }
  }
  return r;
}

ConservationReport conservation_check(const MomentReport& du, const MomentReport& w,
                                      const MomentReport& q) {
  if (du.scheme != SchemeKind::kInternalEnergy || w.scheme != SchemeKind::kWork ||
      q.scheme != SchemeKind::kHeat)
    throw AnalysisError("conservation_check expects (du, w, q) reports");
  auto same = [](ExperimentConfig a, const ExperimentConfig& b) { return a == b; };
  if (!same(du.config, w.config) || !same(du.config, q.config))
    throw AnalysisError("conservation_check: reports come from different configurations");
  ConservationReport r;
  r.du = du.mean;
  r.w = w.mean;
  r.q = q.mean;
  r.residual = du.mean + q.mean - w.mean;
  r.std_error = std::sqrt(du.std_error * du.std_error + w.std_error * w.std_error +
                          q.std_error * q.std_error);
  return r;
}

void write_qpdf_csv(const QpdfTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "f,p\n";
  for (std::size_t i = 0; i < table.energies.size(); ++i)
    out << format_double(table.energies[i]) << ',' << format_double(table.density[i]) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace qthermo
