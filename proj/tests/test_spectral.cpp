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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>

#include "qthermo/errors.hpp"
#include "qthermo/spectral.hpp"

using namespace qthermo;
namespace fs = std::filesystem;

namespace {

QcgfTable synthetic(const std::function<Complex(double)>& g, double dchi = 0.1, double chi_max = 100.0) {
  QcgfTable t;
  t.config.dchi = dchi;
  t.config.chi_max = chi_max;
  const long k_max = std::lround(chi_max / dchi);
  for (long k = -k_max; k <= k_max; ++k) {
    t.grid.push_back(static_cast<double>(k) * dchi);
    t.values.push_back(g(t.grid.back()));
  }
  return t;
}

ExperimentConfig with_p(double p) {
  ExperimentConfig cfg;
  cfg.p = p;
  return cfg;
}

const std::vector<double> kEnergies = default_energy_grid();

}  // namespace

TEST(EnergyGrid, SpansWindow) {
  ASSERT_EQ(kEnergies.size(), 1001u);
  EXPECT_DOUBLE_EQ(kEnergies.front(), -2.5);
  EXPECT_NEAR(kEnergies.back(), 2.5, 1e-12);
  EXPECT_NEAR(kEnergies[500], 0.0, 1e-12);
}

TEST(Qpdf, SingleToneSitsAtItsEnergy) {
  const QcgfTable t = synthetic([](double chi) { return std::polar(1.0, chi * 1.0); });
  const QpdfTable q = qpdf(t, kEnergies);
  const auto peak = std::max_element(q.density.begin(), q.density.end()) - q.density.begin();
  EXPECT_NEAR(q.energies[static_cast<std::size_t>(peak)], 1.0, 1e-9);
  EXPECT_NEAR(q.density[static_cast<std::size_t>(peak)], 2001 * 0.1 / (2 * std::numbers::pi), 1e-9);
  EXPECT_NEAR(q.first_moment(), 1.0, 0.02);
  EXPECT_LT(q.max_imag_residue, 1e-9);
}

TEST(Qpdf, ConstantTableMassIsOne) {
  const QcgfTable t = synthetic([](double) { return Complex(1.0); });
  EXPECT_NEAR(qpdf(t, kEnergies).total_mass(), 1.0, 0.02);
  EXPECT_NEAR(qpdf(t, kEnergies, Window::kFejer).total_mass(), 1.0, 0.02);
}

TEST(Qpdf, FejerKernelIsNonNegative) {
  const QcgfTable t = synthetic([](double) { return Complex(1.0); });
  const QpdfTable raw = qpdf(t, kEnergies);
  const QpdfTable fej = qpdf(t, kEnergies, Window::kFejer);
  EXPECT_LT(*std::min_element(raw.density.begin(), raw.density.end()), -1.0);
  EXPECT_GT(*std::min_element(fej.density.begin(), fej.density.end()), -1e-9);
}

TEST(Qpdf, RejectsMalformedTables) {
  QcgfTable t = synthetic([](double) { return Complex(1.0); }, 0.1, 1.0);
  t.values.pop_back();
  EXPECT_THROW(qpdf(t, kEnergies), AnalysisError);
  QcgfTable skew = synthetic([](double) { return Complex(1.0); }, 0.1, 1.0);
  skew.grid.front() = -1.2;
  EXPECT_THROW(peak_weights(skew), AnalysisError);
  EXPECT_THROW(qpdf(QcgfTable{}, kEnergies), AnalysisError);
}

TEST(Qpdf, MassAndSignPinOnSimulatedTables) {
  for (double p : {0.0, 0.5, 1.0}) {
    for (SchemeKind s : kAllSchemes) {
      const QcgfTable t = sweep(s, with_p(p));
      const QpdfTable q = qpdf(t, kEnergies);
      const double m = average_from_derivative(t).mean;
      EXPECT_NEAR(q.total_mass(), 1.0, 0.02) << scheme_tag(s) << " p=" << p;
      EXPECT_NEAR(q.first_moment(), m, 0.02 * std::max(std::abs(m), 1.0)) << scheme_tag(s) << " p=" << p;
      if (std::abs(m) > 0.05) {
        EXPECT_NEAR(q.first_moment(), m, 0.02 * std::abs(m)) << scheme_tag(s) << " p=" << p;
        EXPECT_GT(q.first_moment() * m, 0.0);
      }
    }
  }
}

TEST(Peaks, DirichletKernel) {
  EXPECT_DOUBLE_EQ(dirichlet_kernel(1000, 0.1, 0.0), 1.0);
  EXPECT_NEAR(dirichlet_kernel(1000, 0.1, 0.5), -0.0047619, 1e-6);
  EXPECT_NEAR(dirichlet_kernel(1000, 0.1, 1.0), -0.0046260, 1e-6);
}

TEST(Peaks, CosineTablePeaksAtPlusMinusOne) {
  const QcgfTable t = synthetic([](double chi) { return Complex(std::cos(chi)); });
  const PeakTable pk = peak_weights(t);
  const double floor = crosstalk_floor(t, pk);
  EXPECT_NEAR(pk.weight_at(1.0), 0.5 * (1.0 + dirichlet_kernel(1000, 0.1, 2.0)), 1e-12);
  EXPECT_NEAR(pk.weight_at(-1.0), pk.weight_at(1.0), 1e-12);
  for (const Peak& p : pk.peaks)
    if (std::abs(std::abs(p.energy) - 1.0) > 1e-9) EXPECT_LE(std::abs(p.weight), floor);
  EXPECT_THROW(pk.weight_at(0.25), AnalysisError);
}

TEST(Peaks, InternalEnergyHalfQuantumWeightsAtHalfDissipation) {
  // Reference weights from the independent operator-sum model, p = 0.5.
  const QcgfTable t = sweep(SchemeKind::kInternalEnergy, with_p(0.5));
  const PeakTable pk = peak_weights(t);
  const double floor = crosstalk_floor(t, pk);
  EXPECT_NEAR(pk.weight_at(-1.0), 0.2875, 0.001 + floor);
  EXPECT_NEAR(pk.weight_at(-0.5), 0.0402, 0.001 + floor);
  EXPECT_NEAR(pk.weight_at(0.0), 0.5584, 0.001 + floor);
  EXPECT_NEAR(pk.weight_at(0.5), -0.0402, 0.001 + floor);
  EXPECT_NEAR(pk.weight_at(1.0), 0.1542, 0.001 + floor);
}

TEST(Peaks, RenormalizationPreservesRatios) {
  const PeakTable pk = peak_weights(sweep(SchemeKind::kWork, with_p(0.5)));
  const PeakTable rn = renormalize_peaks(pk);
  EXPECT_NEAR(rn.norm, 1.0, 1e-14);
  for (std::size_t i = 0; i < pk.peaks.size(); ++i)
    for (std::size_t j = 0; j < pk.peaks.size(); ++j)
      if (pk.peaks[j].weight != 0.0)
        EXPECT_NEAR(rn.peaks[i].weight / rn.peaks[j].weight, pk.peaks[i].weight / pk.peaks[j].weight,
                    1e-12 * std::abs(pk.peaks[i].weight / pk.peaks[j].weight));
}

TEST(Peaks, ZeroNormIsAnError) {
  PeakTable pk;
  pk.peaks = {{-1.0, 0.5}, {1.0, -0.5}};
  pk.norm = 0.0;
  EXPECT_THROW(renormalize_peaks(pk), AnalysisError);
  const QcgfTable t = synthetic([](double) { return Complex(0.0); }, 0.1, 2.0);
  EXPECT_THROW(average_from_peaks(t), AnalysisError);
}

TEST(Moments, SlopeValidatesChiBar) {
  const QcgfTable t = sweep(SchemeKind::kWork, with_p(0.5));
  EXPECT_THROW(average_from_slope(t, 0.0), AnalysisError);
  EXPECT_THROW(average_from_slope(t, 0.6), AnalysisError);
  EXPECT_THROW(average_from_slope(t, 0.15), AnalysisError);
  EXPECT_NEAR(average_from_slope(t, 0.1).mean, t.values[t.center() + 1].imag() / 0.1, 1e-15);
  EXPECT_NEAR(average_from_slope(t, -0.1).mean, average_from_slope(t, 0.1).mean, 1e-15);
}

TEST(Moments, SampledErrorBars) {
  ExperimentConfig cfg = with_p(0.5);
  cfg.mode = Mode::kSampled;
  cfg.chi_max = 1.0;
  const QcgfTable t = sweep(SchemeKind::kHeat, cfg);
  EXPECT_NEAR(average_from_slope(t, 0.1).std_error, 1.0 / (0.1 * std::sqrt(8000.0)), 1e-15);
  EXPECT_NEAR(average_from_slope(t, 0.5).std_error, 1.0 / (0.5 * std::sqrt(8000.0)), 1e-15);
  EXPECT_NEAR(average_from_derivative(t).std_error, 1.0 / (0.1 * std::sqrt(8000.0)), 1e-15);
  EXPECT_GT(average_from_peaks(t).std_error, 0.0);
  EXPECT_EQ(average_from_derivative(sweep(SchemeKind::kHeat, with_p(0.5))).std_error, 0.0);
}

TEST(Moments, DerivativeMatchesDirectObservables) {
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const ExperimentConfig cfg = with_p(p);
    const DirectObservables d = direct_observables(cfg);
    const double oracle[] = {d.du, d.w, d.q};
    int i = 0;
    for (SchemeKind s : kAllSchemes) {
      const double m = average_at_origin(s, cfg).mean;
      EXPECT_NEAR(m, oracle[i], 0.005 * std::max(std::abs(oracle[i]), 1.0)) << scheme_tag(s) << " p=" << p;
      ++i;
    }
  }
}

TEST(Moments, SecondOrderConvergence) {
  ExperimentConfig cfg = with_p(0.5);
  const double oracle = direct_observables(cfg).q;
  const double e1 = std::abs(average_at_origin(SchemeKind::kHeat, cfg).mean - oracle);
  cfg.dchi = 0.05;
  const double e2 = std::abs(average_at_origin(SchemeKind::kHeat, cfg).mean - oracle);
  EXPECT_NEAR(e1 / e2, 4.0, 0.1);
}

TEST(Moments, ThreePointSweepMatchesFullSweep) {
  ExperimentConfig cfg = with_p(0.25);
  cfg.mode = Mode::kSampled;
  cfg.chi_max = 10.0;
  const MomentReport full = average_from_derivative(sweep(SchemeKind::kWork, cfg));
  const MomentReport local = average_at_origin(SchemeKind::kWork, cfg);
  EXPECT_EQ(full.mean, local.mean);
  EXPECT_EQ(local.config, cfg);
}

TEST(Negativity, SyntheticDipBelowFloor) {
  QpdfTable q;
  q.energies = kEnergies;
  for (double f : kEnergies) q.density.push_back(std::abs(f) > 2.15 ? (f > 0 ? 0.01 : -0.01) : (std::abs(f - 0.5) < 0.05 ? -0.3 : 0.2));
  const NegativityReport r = negativity(q);
  EXPECT_DOUBLE_EQ(r.ringing_floor, 0.01);
  ASSERT_EQ(r.regions.size(), 1u);
  EXPECT_TRUE(r.negative_near(0.5, 0.01));
  EXPECT_FALSE(r.negative_near(-0.5, 0.1));
  EXPECT_DOUBLE_EQ(r.min_density, -0.3);
}

TEST(Negativity, InternalEnergyNegativeOnlyWithCoherence) {
  const NegativityReport p0 = negativity(qpdf(sweep(SchemeKind::kInternalEnergy, with_p(0.0)), kEnergies, Window::kFejer));
  EXPECT_TRUE(p0.negative());
  EXPECT_TRUE(p0.negative_near(0.5, 0.1));
  EXPECT_FALSE(p0.negative_near(-0.5, 0.1));
  const NegativityReport p1 = negativity(qpdf(sweep(SchemeKind::kInternalEnergy, with_p(1.0)), kEnergies, Window::kFejer));
  EXPECT_FALSE(p1.negative());
}

TEST(Negativity, RectangularSidelobesExceedFloorEvenForHeat) {
  const NegativityReport r = negativity(qpdf(sweep(SchemeKind::kHeat, with_p(1.0)), kEnergies));
  EXPECT_TRUE(r.negative());
  const NegativityReport f = negativity(qpdf(sweep(SchemeKind::kHeat, with_p(1.0)), kEnergies, Window::kFejer));
  EXPECT_FALSE(f.negative());
}

TEST(Conservation, ExactResidualAndValidation) {
  ExperimentConfig cfg = with_p(0.5);
  cfg.dchi = 1e-3;
  const MomentReport du = average_at_origin(SchemeKind::kInternalEnergy, cfg);
  const MomentReport w = average_at_origin(SchemeKind::kWork, cfg);
  const MomentReport q = average_at_origin(SchemeKind::kHeat, cfg);
  EXPECT_LT(std::abs(conservation_check(du, w, q).residual), 1e-6);
  EXPECT_THROW(conservation_check(w, du, q), AnalysisError);
  MomentReport other = q;
  other.config.p = 0.25;
  EXPECT_THROW(conservation_check(du, w, other), AnalysisError);
}

TEST(Csv, QpdfHeaderAndPrecision) {
  const fs::path p = fs::temp_directory_path() / "qthermo_qpdf_test.csv";
  QpdfTable q;
  q.energies = {-0.1, 0.2};
  q.density = {1.0 / 3.0, 2.0};
  write_qpdf_csv(q, p);
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "f,p");
  std::getline(in, line);
  EXPECT_EQ(line, "-0.10000000000000001,0.33333333333333331");
  fs::remove(p);
}
