/* Copyright 2026 The mobius-transport Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "mobius/runner.hpp"

#include "mobius/errors.hpp"
#include "mobius/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace mobius {

namespace {

namespace fs = std::filesystem;

std::string fmt17(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + path.string());
  os << content;
  if (!os) throw ValidationError("failed writing " + path.string());
}

std::string curve_csv(const TransmissionCurve& curve) {
  std::ostringstream os;
  os << "sweep_value,energy_plus,energy_minus,T_plus,T_minus,NR,propagating_plus,"
        "propagating_minus\n";
  for (const auto& s : curve.samples) {
    os << fmt17(s.sweep_value) << ',' << fmt17(s.energy_plus) << ',' << fmt17(s.energy_minus)
       << ',' << fmt17(s.t_plus) << ',' << fmt17(s.t_minus) << ',' << fmt17(s.nr()) << ','
       << (s.propagating_plus ? 1 : 0) << ',' << (s.propagating_minus ? 1 : 0) << '\n';
  }
  return os.str();
}

std::string curve_plot(const Scenario& s) {
  const bool detuning = std::holds_alternative<DetuningSweep>(s.sweep);
  std::ostringstream os;
  os << "# gnuplot script for curve.csv\n"
     << "set datafile separator ','\n"
     << "set title '" << s.label << "'\n"
     << "set xlabel '" << (detuning ? "Delta" : "|k|") << "'\n"
     << "set ylabel 'T'\n"
     << "set key top right\n"
     << "plot 'curve.csv' every ::1 using 1:4 with lines lc rgb 'red' dt 1 lw 2 title '+k', \\\n"
     << "     'curve.csv' every ::1 using 1:5 with lines lc rgb 'blue' dt 2 lw 2 title '-k'\n"
     << "pause mouse close\n";
  return os.str();
}

std::string bands_plot(const Scenario& s) {
  std::ostringstream os;
  os << "# gnuplot script for bands.csv\n"
     << "set datafile separator ','\n"
     << "set title '" << s.label << "'\n"
     << "set xlabel 'k'\n"
     << "set ylabel 'E'\n"
     << "set xrange [-pi:pi]\n"
     << "set arrow from " << fmt17(symmetry_axis(s.ring, BandId::Upper))
     << ", graph 0 to " << fmt17(symmetry_axis(s.ring, BandId::Upper))
     << ", graph 1 nohead lc rgb 'red' dt 2\n"
     << "set arrow from 0, graph 0 to 0, graph 1 nohead lc rgb 'blue' dt 1\n"
     << "plot 'bands.csv' every ::1 using 1:2 with lines lc rgb 'red' dt 1 lw 2 title 'upper', \\\n"
     << "     'bands.csv' every ::1 using 1:3 with lines lc rgb 'blue' dt 2 lw 2 title 'lower'\n"
     << "pause mouse close\n";
  return os.str();
}

struct CrossCheckRow {
  std::string source;
  double sweep_value;
  int direction;
  double energy;
  double t_negf;
  double t_oracle;
  double flux;
};

std::vector<CrossCheckRow> cross_check(const Scenario& s, const TransmissionCurve& curve,
                                       std::uint64_t seed) {
  std::vector<CrossCheckRow> rows;
  for (const auto& sample : curve.samples) {
    for (const int dir : {+1, -1}) {
      const bool open = dir > 0 ? sample.propagating_plus : sample.propagating_minus;
      if (!open) continue;
      const double e = dir > 0 ? sample.energy_plus : sample.energy_minus;
      const Device device = sample_device(s, sample.sweep_value, dir);
      const auto sol = solve_scattering(device, e);
      rows.push_back({"curve", sample.sweep_value, dir, e, dir > 0 ? sample.t_plus : sample.t_minus,
                      sol.T, sol.reflectance() + sol.T});
    }
  }
  const Device base = s.device();
  std::mt19937_64 rng(seed);
  const double lo = std::max(base.left.band_bottom(), base.right.band_bottom());
  const double hi = std::min(base.left.band_top(), base.right.band_top());
  std::uniform_real_distribution<double> pick(lo, hi);
  for (int i = 0; i < 50 && lo < hi; ++i) {
    const double e = pick(rng);
    if (!base.left.propagates(e) || !base.right.propagates(e)) continue;
    const auto sol = solve_scattering(base, e);
    rows.push_back({"random", 0.0, 0, e, transmission(base, e, s.solver), sol.T,
                    sol.reflectance() + sol.T});
  }
  return rows;
}

}  // namespace

ParsedConfig load_scenario(const RunConfig& cfg) {
  ParsedConfig parsed;
  if (!cfg.preset.empty() && !cfg.config_path.empty()) {
    throw ValidationError("give either a preset or a config file, not both");
  }
  if (!cfg.preset.empty()) {
    parsed.scenario = preset(cfg.preset);
    parsed.run = cfg;
  } else if (!cfg.config_path.empty()) {
    std::ifstream is(cfg.config_path, std::ios::binary);
    if (!is) throw ValidationError("cannot read config " + cfg.config_path.string());
    std::stringstream buffer;
    buffer << is.rdbuf();
    parsed = parse_config(buffer.str());
    const RunConfig from_file = parsed.run;
    parsed.run = cfg;
    parsed.run.cross_check = cfg.cross_check || from_file.cross_check;
    if (cfg.out_dir.empty()) parsed.run.out_dir = from_file.out_dir;
    if (cfg.seed == RunConfig{}.seed) parsed.run.seed = from_file.seed;
  } else {
    throw ValidationError("no scenario: pass --preset NAME or --config PATH");
  }
  if (parsed.run.out_dir.empty()) parsed.run.out_dir = "out";
  apply_overrides(parsed.scenario, parsed.run);
  return parsed;
}

int run(const RunConfig& cfg, std::ostream& err) {
  const auto report = [&err](std::string_view kind, std::string_view message) {
    err << "error: kind=" << kind << " message=" << quoted(message) << std::endl;
  };
  try {
    const auto [s, rc] = load_scenario(cfg);
    if (rc.cross_check && (s.left.convention == SelfEnergyConvention::Literal ||
                           s.right.convention == SelfEnergyConvention::Literal)) {
      throw ValidationError("--cross-check needs the surface self-energy convention");
    }
    std::error_code ec;
    fs::create_directories(rc.out_dir, ec);
    if (ec) throw ValidationError("cannot create output directory " + rc.out_dir.string());

    RunConfig portable = rc;
    portable.out_dir.clear();
    const std::string scenario_text = serialize_config(s, portable);

    std::ostringstream summary;
    summary << "label = " << s.label << "\n";

    if (std::holds_alternative<BandPlot>(s.sweep)) {
      std::ostringstream bands;
      bands << "k,E_upper,E_lower\n";
      for (const auto& row : band_table(s)) {
        bands << fmt17(row.k) << ',' << fmt17(row.upper) << ',' << fmt17(row.lower) << '\n';
      }
      std::ostringstream levels;
      levels << "index,energy\n";
      const auto lv = ring_levels(s.ring);
      for (std::size_t i = 0; i < lv.size(); ++i) levels << i << ',' << fmt17(lv[i]) << '\n';
      for (const BandId band : {BandId::Upper, BandId::Lower}) {
        const auto [lo, hi] = band_edges(s.ring, band);
        summary << to_string(band) << "_band = [" << fmt17(lo) << ", " << fmt17(hi)
                << "], symmetry_axis = " << fmt17(symmetry_axis(s.ring, band)) << "\n";
      }
      summary << "\n# scenario\n" << scenario_text;
      write_file(rc.out_dir / "bands.csv", bands.str());
      write_file(rc.out_dir / "levels.csv", levels.str());
      write_file(rc.out_dir / "summary.txt", summary.str());
      write_file(rc.out_dir / "plot.gp", bands_plot(s));
      return kExitOk;
    }

    const TransmissionCurve curve = run_sweep(s);
    const auto nr = nonreciprocity(curve);
    summary << "samples = " << curve.samples.size() << "\n"
            << "max_abs_nr = " << fmt17(nr.max_abs) << "\n"
            << "argmax = " << fmt17(nr.argmax) << "\n";

    std::vector<CrossCheckRow> checks;
    double worst = 0.0;
    if (rc.cross_check) {
      checks = cross_check(s, curve, rc.seed);
      for (const auto& row : checks) worst = std::max(worst, std::abs(row.t_negf - row.t_oracle));
      summary << "cross_check_points = " << checks.size() << "\n"
              << "cross_check_max_abs_diff = " << fmt17(worst) << "\n";
    }
    summary << "\n# scenario\n" << scenario_text;

    write_file(rc.out_dir / "curve.csv", curve_csv(curve));
    write_file(rc.out_dir / "summary.txt", summary.str());
    write_file(rc.out_dir / "plot.gp", curve_plot(s));
    if (rc.cross_check) {
      std::ostringstream os;
      os << "source,sweep_value,direction,energy,T_negf,T_oracle,abs_diff,flux\n";
      for (const auto& row : checks) {
        os << row.source << ',' << fmt17(row.sweep_value) << ',' << row.direction << ','
           << fmt17(row.energy) << ',' << fmt17(row.t_negf) << ',' << fmt17(row.t_oracle) << ','
           << fmt17(std::abs(row.t_negf - row.t_oracle)) << ',' << fmt17(row.flux) << '\n';
      }
      write_file(rc.out_dir / "oracle.csv", os.str());
      if (!(worst < kCrossCheckTolerance)) {
        report("cross-check", "max |T_negf - T_oracle| = " + fmt17(worst));
        return kExitCrossCheck;
      }
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    report("validation", e.what());
    return kExitValidation;
  } catch (const PoleError& e) {
    report("solver", e.what());
    return kExitSolver;
  } catch (const PreconditionError& e) {
    report("solver", e.what());
    return kExitSolver;
  }
}

}  // namespace mobius
