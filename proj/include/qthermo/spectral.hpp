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

// From a QCGF table to quasi-probability densities, peak weights, averages
// and conservation checks.
//
// Fourier convention: P(F) = (1/2pi) int dchi G(chi) e^{-i chi F}, evaluated as
// the Riemann sum (dchi/2pi) sum_k G_k e^{-i chi_k F} over the stored grid, so
// that a phase e^{i chi E} in G produces a peak at F = E and
// int F P(F) dF = -i G'(0).

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qthermo/protocol.hpp"

namespace qthermo {

// Taper applied to G before the transform. kRectangular is the plain
// truncated sum; kFejer weights sample k by 1 - |k| / (K + 1), which turns the
// Dirichlet kernel into the non-negative Fejer kernel, so a table made of
// non-negative weights can never produce negative density.
enum class Window { kRectangular, kFejer };

struct QpdfTable {
  SchemeKind scheme = SchemeKind::kInternalEnergy;
  Window window = Window::kRectangular;
  std::vector<double> energies;
  std::vector<double> density;
  // Largest |Im| of the transform before the real part was taken.
  double max_imag_residue = 0.0;

  // Trapezoidal integrals over the stored energy window.
  double total_mass() const;
  double first_moment() const;
};

// [-2.5, 2.5] with step 0.005 (1001 points).
std::vector<double> default_energy_grid();

// Throws AnalysisError for an empty grid or a table without a symmetric grid.
QpdfTable qpdf(const QcgfTable& table, std::span<const double> energies,
               Window window = Window::kRectangular);

struct Peak {
  double energy = 0.0;
  double weight = 0.0;
};

struct PeakTable {
  std::vector<Peak> peaks;
  double norm = 0.0;

  // Throws AnalysisError if no peak sits at `energy`.
  double weight_at(double energy) const;
  double abs_sum() const;
};

// {-2, -3/2, ..., 3/2, 2}.
std::vector<double> peak_energies();

// (1/N) sum_k e^{-i chi_k delta} over the symmetric grid k = -K..K with spacing
// dchi; real by symmetry. Equals 1 at delta = 0.
double dirichlet_kernel(std::size_t k_max, double dchi, double delta);

// w(E) = Re[(1/N) sum_k G_k e^{-i chi_k E}] at every peak energy; norm is the
// sum of the weights.
PeakTable peak_weights(const QcgfTable& table);

// Upper bound on the weight that can leak into a peak from the others:
//   max_{d in {1/2, 1, ..., 4}} |D(d)| * sum_E |w(E)|.
// At the default grid this is about 0.5 % of the total absolute weight.
double crosstalk_floor(const QcgfTable& table, const PeakTable& peaks);

// Divides every weight by the norm. Throws AnalysisError when |norm| < 1e-12.
PeakTable renormalize_peaks(const PeakTable& peaks);

enum class MomentMethod { kSlope, kDerivative, kPeaks };
std::string to_string(MomentMethod method);

struct MomentReport {
  double mean = 0.0;
  double std_error = 0.0;
  MomentMethod method = MomentMethod::kDerivative;
  SchemeKind scheme = SchemeKind::kInternalEnergy;
  ExperimentConfig config;
};

// mean = Im G(chi_bar) / chi_bar, stderr = 1 / (chi_bar sqrt(shots)) for sampled
// tables and 0 for exact ones. chi_bar must be a nonzero grid point with
// |chi_bar| <= 1/2, otherwise AnalysisError.
MomentReport average_from_slope(const QcgfTable& table, double chi_bar);

// Central difference at zero: Im[G(dchi) - G(-dchi)] / (2 dchi). Sampled
// tables report stderr 1 / (dchi sqrt(shots)).
MomentReport average_from_derivative(const QcgfTable& table);

// sum_E E w(E) / norm over the peak projection. For sampled tables the
// stderr propagates an independent 1/sqrt(shots) error on every stored
// Re G and Im G sample through the (linear) projection.
MomentReport average_from_peaks(const QcgfTable& table);

// Central-difference average from a three-point sweep {-dchi, 0, dchi}; the
// returned config keeps the caller's chi_max. Sampling streams match those of a
// full sweep, so the result equals average_from_derivative(sweep(scheme, cfg)).
MomentReport average_at_origin(SchemeKind scheme, const ExperimentConfig& cfg);

struct EnergyInterval {
  double lo = 0.0;
  double hi = 0.0;
  double min_density = 0.0;
};

struct NegativityReport {
  double min_density = 0.0;
  double min_energy = 0.0;
  // max |density| over F in [2.2, 2.5], a window that carries no peak.
  double ringing_floor = 0.0;
  std::vector<EnergyInterval> regions;

  bool negative() const { return !regions.empty(); }
  // True if some region overlaps [center - radius, center + radius].
  bool negative_near(double center, double radius) const;
};

inline constexpr double kFloorWindowLo = 2.2;
inline constexpr double kFloorWindowHi = 2.5;

// Maximal runs of grid points with density < -ringing_floor.
NegativityReport negativity(const QpdfTable& qpdf);

struct ConservationReport {
  double du = 0.0;
  double w = 0.0;
  double q = 0.0;
  double residual = 0.0;  // du + q - w
  double std_error = 0.0;  // root-sum-square of the three errors
};

// Throws AnalysisError if the reports are not (du, w, q) in that order or
// were produced under different configurations.
ConservationReport conservation_check(const MomentReport& du, const MomentReport& w,
                                      const MomentReport& q);

// QPDF CSV: header `f,p`, 17 significant digits.
void write_qpdf_csv(const QpdfTable& table, const std::filesystem::path& path);

}  // namespace qthermo
