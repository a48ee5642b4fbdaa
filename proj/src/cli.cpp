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

#include "qthermo/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "qthermo/errors.hpp"
#include "qthermo/numfmt.hpp"
#include "qthermo/spectral.hpp"
#include "qthermo/tmp_oracle.hpp"

namespace qthermo {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  if (fs::exists(dir, ec) && !fs::is_directory(dir, ec))
    throw IoError("output path " + dir.string() + " exists and is not a directory");
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

void write_json(const json& j, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

double parse_real(const std::string& key, const std::string& value) {
  auto v = parse_double(value);
  if (!v || !std::isfinite(*v)) throw ConfigError(key, "expected a finite number, got '" + value + "'");
  return *v;
}

template <typename Int>
Int parse_int(const std::string& key, const std::string& value) {
  std::string_view s(value);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  Int v{};
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  return v;
}

json config_json(const ExperimentConfig& cfg) {
  return {{"theta", cfg.theta},     {"phi", cfg.phi},   {"alpha", cfg.alpha},
          {"beta", cfg.beta},       {"p", cfg.p},       {"chi_max", cfg.chi_max},
          {"dchi", cfg.dchi},       {"shots", cfg.shots}, {"mode", mode_tag(cfg.mode)},
          {"seed", cfg.seed}};
}

json moment_json(const MomentReport& m) {
  return {{"mean", m.mean}, {"stderr", m.std_error}, {"method", to_string(m.method)}};
}

json peaks_json(const PeakTable& t) {
  json arr = json::array();
  for (const auto& pk : t.peaks) arr.push_back({{"e", pk.energy}, {"w", pk.weight}});
  return {{"norm", t.norm}, {"peaks", arr}};
}

json negativity_json(const NegativityReport& r) {
  json regions = json::array();
  for (const auto& iv : r.regions)
    regions.push_back({{"lo", iv.lo}, {"hi", iv.hi}, {"min_density", iv.min_density}});
  return {{"ringing_floor", r.ringing_floor},
          {"min_density", r.min_density},
          {"min_energy", r.min_energy},
          {"negative", r.negative()},
          {"regions", regions}};
}

struct AnalysisFiles {
  std::vector<fs::path> files;
  MomentReport derivative;
};

// Writes qpdf, qpdf_fejer, peaks and moments files for one table.
AnalysisFiles write_analysis(const QcgfTable& table, const fs::path& out_dir,
                             const std::optional<double>& direct_oracle) {
  const std::string tag = scheme_tag(table.scheme);
  const auto energies = default_energy_grid();
  AnalysisFiles out;

  const QpdfTable raw = qpdf(table, energies, Window::kRectangular);
  const fs::path qpdf_path = out_dir / ("qpdf_" + tag + ".csv");
  write_qpdf_csv(raw, qpdf_path);
  out.files.push_back(qpdf_path);

  const QpdfTable fejer = qpdf(table, energies, Window::kFejer);
  const fs::path fejer_path = out_dir / ("qpdf_fejer_" + tag + ".csv");
  write_qpdf_csv(fejer, fejer_path);
  out.files.push_back(fejer_path);

  const PeakTable peaks = peak_weights(table);
  json pj = {{"scheme", tag}, {"raw", peaks_json(peaks)},
             {"crosstalk_floor", crosstalk_floor(table, peaks)},
             {"negativity", negativity_json(negativity(fejer))},
             {"negativity_window", "fejer"}};
  if (std::abs(peaks.norm) >= 1e-12) pj["renormalized"] = peaks_json(renormalize_peaks(peaks));
  const fs::path peaks_path = out_dir / ("peaks_" + tag + ".json");
  write_json(pj, peaks_path);
  out.files.push_back(peaks_path);

  out.derivative = average_from_derivative(table);
  json mj = {{"scheme", tag}, {"derivative", moment_json(out.derivative)},
             {"qpdf_first_moment", raw.first_moment()}, {"qpdf_total_mass", raw.total_mass()}};
  const double dchi = table.dchi();
  if (dchi <= 0.5) mj["slope"] = moment_json(average_from_slope(table, dchi));
  mj["slope_chi_bar"] = dchi;
  if (std::abs(peaks.norm) >= 1e-12) mj["peaks"] = moment_json(average_from_peaks(table));
  if (direct_oracle) mj["direct"] = *direct_oracle;
  const fs::path moments_path = out_dir / ("moments_" + tag + ".json");
  write_json(mj, moments_path);
  out.files.push_back(moments_path);
  return out;
}

double direct_for(SchemeKind scheme, const DirectObservables& d) {
  switch (scheme) {
    case SchemeKind::kInternalEnergy: return d.du;
    case SchemeKind::kWork: return d.w;
    case SchemeKind::kHeat: return d.q;
  }
  return 0.0;
}

}  // namespace

void apply_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "theta") cfg.theta = parse_real(key, value);
  else if (key == "phi") cfg.phi = parse_real(key, value);
  else if (key == "alpha") cfg.alpha = parse_real(key, value);
  else if (key == "beta") cfg.beta = parse_real(key, value);
  else if (key == "p") cfg.p = parse_real(key, value);
  else if (key == "chi_max") cfg.chi_max = parse_real(key, value);
  else if (key == "dchi") cfg.dchi = parse_real(key, value);
  else if (key == "shots") cfg.shots = parse_int<std::int64_t>(key, value);
  else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(key, value);
  else if (key == "mode") cfg.mode = parse_mode(value);
  else throw ConfigError(key, "unknown configuration key");
}

ExperimentConfig load_config_file(const fs::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", path.string() + ":" + std::to_string(line_no) +
                                      ": expected key = value");
    apply_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

RunManifest cmd_run(const std::vector<SchemeKind>& schemes, const ExperimentConfig& cfg,
                    const fs::path& out_dir) {
  cfg.validate();
  if (schemes.empty()) throw ConfigError("scheme", "no scheme selected");
  ensure_dir(out_dir);

  RunManifest manifest;
  manifest.config = cfg;
  manifest.schemes = schemes;
  manifest.started_at = utc_now();

  const DirectObservables direct = direct_observables(cfg);
  std::map<SchemeKind, MomentReport> derivative;
  for (SchemeKind scheme : schemes) {
    const QcgfTable table = sweep(scheme, cfg);
    const fs::path qcgf_path = out_dir / ("qcgf_" + scheme_tag(scheme) + ".csv");
    write_qcgf_csv(table, qcgf_path);
    manifest.outputs.push_back(qcgf_path);
    AnalysisFiles files = write_analysis(table, out_dir, direct_for(scheme, direct));
    manifest.outputs.insert(manifest.outputs.end(), files.files.begin(), files.files.end());
    derivative[scheme] = files.derivative;
  }
  manifest.finished_at = utc_now();

  json summary = {{"tool", "qthermo"},
                  {"version", kToolVersion},
                  {"started_at", manifest.started_at},
                  {"finished_at", manifest.finished_at},
                  {"seed", cfg.seed},
                  {"config", config_json(cfg)}};
  json scheme_list = json::array();
  for (SchemeKind s : schemes) scheme_list.push_back(scheme_tag(s));
  summary["schemes"] = scheme_list;
  if (derivative.size() == 3) {
    const ConservationReport c =
        conservation_check(derivative.at(SchemeKind::kInternalEnergy),
                           derivative.at(SchemeKind::kWork), derivative.at(SchemeKind::kHeat));
    summary["conservation"] = {{"du", c.du},   {"w", c.w},
                               {"q", c.q},     {"residual", c.residual},
                               {"stderr", c.std_error}};
  }
  const fs::path summary_path = out_dir / "run_summary.json";
  manifest.outputs.push_back(summary_path);
  json outputs = json::array();
  for (const auto& p : manifest.outputs) outputs.push_back(p.filename().string());
  summary["outputs"] = outputs;
  write_json(summary, summary_path);
  return manifest;
}

fs::path cmd_sweep_p(const std::vector<double>& p_values, const ExperimentConfig& cfg,
                     const fs::path& out_dir) {
  if (p_values.empty()) throw ConfigError("p", "empty p list");
  for (double p : p_values) {
    ExperimentConfig probe = cfg;
    probe.p = p;
    probe.validate();
  }
  ensure_dir(out_dir);

  const fs::path path = out_dir / "averages_vs_p.csv";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "p,du,du_err,w,w_err,q,q_err,tmp_du,tmp_w,tmp_q\n";
  for (double p : p_values) {
    ExperimentConfig c = cfg;
    c.p = p;
    const MomentReport du = average_at_origin(SchemeKind::kInternalEnergy, c);
    const MomentReport w = average_at_origin(SchemeKind::kWork, c);
    const MomentReport q = average_at_origin(SchemeKind::kHeat, c);
    const TmpAverages tmp = tmp_averages(tmp_distribution(c));
    out << format_double(p) << ',' << format_double(du.mean) << ','
        << format_double(du.std_error) << ',' << format_double(w.mean) << ','
        << format_double(w.std_error) << ',' << format_double(q.mean) << ','
        << format_double(q.std_error) << ',' << format_double(tmp.du) << ','
        << format_double(tmp.w) << ',' << format_double(tmp.q) << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
  return path;
}

std::vector<fs::path> cmd_tmp(const ExperimentConfig& cfg, const fs::path& out_dir) {
  cfg.validate();
  ensure_dir(out_dir);
  const TmpDistribution dist = tmp_distribution(cfg);
  const fs::path dist_path = out_dir / "tmp_dist.csv";
  write_tmp_csv(dist, dist_path);
  const TmpAverages a = tmp_averages(dist);
  const fs::path avg_path = out_dir / "tmp_averages.json";
  write_json({{"du", a.du}, {"q", a.q}, {"w", a.w}, {"config", config_json(cfg)}}, avg_path);
  return {dist_path, avg_path};
}

std::vector<fs::path> cmd_analyze(const fs::path& qcgf_csv, SchemeKind scheme,
                                  const ExperimentConfig& cfg, const fs::path& out_dir) {
  QcgfTable table = read_qcgf_csv(qcgf_csv, scheme);
  table.config.mode = cfg.mode;
  table.config.shots = cfg.shots;
  ensure_dir(out_dir);
  return write_analysis(table, out_dir, std::nullopt).files;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detector-qubit simulator for energy, work and heat quasi-distributions", "qthermo"};
  app.require_subcommand(1);

  struct Common {
    std::map<std::string, std::string> overrides;
    std::string config_path;
    std::string out_dir = "out";
  };
  Common common;

  auto add_common = [&](CLI::App* sub) {
    static const std::vector<std::pair<std::string, std::string>> keys = {
        {"--p", "p"},           {"--theta", "theta"}, {"--phi", "phi"},
        {"--alpha", "alpha"},   {"--beta", "beta"},   {"--chi-max", "chi_max"},
        {"--dchi", "dchi"},     {"--shots", "shots"}, {"--mode", "mode"},
        {"--seed", "seed"}};
    for (const auto& [flag, key] : keys) {
      sub->add_option_function<std::string>(
          flag, [&common, key = key](const std::string& v) { common.overrides[key] = v; },
          "Override '" + key + "'");
    }
    sub->add_option("--config", common.config_path, "key=value configuration file");
    sub->add_option("--out", common.out_dir, "Output directory")->capture_default_str();
  };

  std::vector<std::string> scheme_tags;
  auto* run = app.add_subcommand("run", "Sweep chi for the selected schemes and analyse");
  add_common(run);
  run->add_option("--scheme", scheme_tags, "du, w, q (repeat or comma-separate); default all")
      ->delimiter(',');

  std::string p_list = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  auto* sweep_p = app.add_subcommand("sweep-p", "Averages versus relaxation probability");
  add_common(sweep_p);
  sweep_p->add_option("--p-list", p_list, "Comma-separated p values")->capture_default_str();

  auto* tmp = app.add_subcommand("tmp", "Two-measurement-protocol reference distribution");
  add_common(tmp);

  std::string qcgf_path;
  std::string analyze_scheme;
  auto* analyze = app.add_subcommand("analyze", "Analyse a stored qcgf_<scheme>.csv");
  add_common(analyze);
  analyze->add_option("qcgf", qcgf_path, "QCGF CSV file")->required();
  analyze->add_option("--scheme", analyze_scheme, "Scheme tag; inferred from qcgf_<tag>.csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    ExperimentConfig cfg;
    if (!common.config_path.empty()) cfg = load_config_file(common.config_path, cfg);
    for (const auto& [key, value] : common.overrides) apply_config_value(cfg, key, value);
    const fs::path out_dir = common.out_dir;

    if (run->parsed()) {
      std::vector<SchemeKind> schemes;
      if (scheme_tags.empty()) schemes.assign(std::begin(kAllSchemes), std::end(kAllSchemes));
      std::set<SchemeKind> seen;
      for (const auto& t : scheme_tags) {
        const SchemeKind s = parse_scheme(t);
        if (seen.insert(s).second) schemes.push_back(s);
      }
      const RunManifest m = cmd_run(schemes, cfg, out_dir);
      for (const auto& p : m.outputs) out << p.string() << '\n';
    } else if (sweep_p->parsed()) {
      std::vector<double> ps;
      std::stringstream ss(p_list);
      for (std::string tok; std::getline(ss, tok, ',');) ps.push_back(parse_real("p", tok));
      out << cmd_sweep_p(ps, cfg, out_dir).string() << '\n';
    } else if (tmp->parsed()) {
      for (const auto& p : cmd_tmp(cfg, out_dir)) out << p.string() << '\n';
    } else if (analyze->parsed()) {
      std::string tag = analyze_scheme;
      if (tag.empty()) {
        const std::string stem = fs::path(qcgf_path).stem().string();
        if (stem.rfind("qcgf_", 0) != 0)
          throw ConfigError("scheme", "cannot infer scheme from '" + qcgf_path + "'; pass --scheme");
        tag = stem.substr(5);
      }
      for (const auto& p : cmd_analyze(qcgf_path, parse_scheme(tag), cfg, out_dir))
        out << p.string() << '\n';
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << " (field '" << e.field() << "')\n";
    return kExitConfig;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const AnalysisError& e) {
    err << "analysis error: " << e.what() << '\n';
    return kExitAnalysis;
  } catch (const fs::filesystem_error& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace qthermo
