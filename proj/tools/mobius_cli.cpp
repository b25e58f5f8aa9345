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

// Command-line front end.
//
//   mobius --list-presets
//   mobius run --preset fig3a1 --out out/fig3a1 --cross-check
//   mobius run --config my.cfg --convention literal

#include "mobius/errors.hpp"
#include "mobius/experiments.hpp"
#include "mobius/runner.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Single-photon transmission through a twisted cavity ring"};
  app.require_subcommand(0, 1);

  bool list = false;
  app.add_flag("--list-presets", list, "Print the preset names and exit");

  mobius::RunConfig cfg;
  if (const char* env = std::getenv("MOBIUS_OUT")) cfg.out_dir = env;

  std::string preset;
  std::string config_path;
  std::string out_dir;
  std::string convention;
  double eta = 0.0;
  double omega = 0.0;
  double zeta = 0.0;
  int k_points = 0;
  int delta_points = 0;

  auto* run = app.add_subcommand("run", "Run a preset or a scenario file");
  auto* preset_opt = run->add_option("--preset", preset, "Preset name (see --list-presets)");
  auto* config_opt = run->add_option("--config", config_path, "Scenario file");
  preset_opt->excludes(config_opt);
  run->add_option("--out", out_dir, "Output directory (default: $MOBIUS_OUT or ./out)");
  auto* conv_opt = run->add_option("--convention", convention, "Self-energy convention")
                       ->check(CLI::IsMember({"surface", "literal"}));
  auto* eta_opt = run->add_option("--eta", eta, "Energy broadening eta")
                      ->check(CLI::NonNegativeNumber);
  auto* omega_opt = run->add_option("--omega", omega, "Lead on-site frequency (both leads)");
  auto* zeta_opt = run->add_option("--zeta", zeta, "Lead hopping (both leads)")
                       ->check(CLI::PositiveNumber);
  auto* kp_opt = run->add_option("--k-points", k_points, "Momentum grid size")
                     ->check(CLI::PositiveNumber);
  auto* dp_opt = run->add_option("--delta-points", delta_points, "Detuning grid size")
                     ->check(CLI::PositiveNumber);
  run->add_flag("--cross-check", cfg.cross_check,
                "Check every propagating sample against the mode-matching solver");
  run->add_option("--seed", cfg.seed, "Seed for the random cross-check energies");
  run->add_flag("--list-presets", list, "Print the preset names and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mobius::kExitValidation;
  }

  if (list) {
    for (const auto& name : mobius::preset_names()) std::cout << name << '\n';
    return mobius::kExitOk;
  }
  if (!run->parsed()) {
    std::cout << app.help();
    return mobius::kExitOk;
  }

  cfg.preset = preset;
  cfg.config_path = config_path;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (*conv_opt) {
    cfg.convention = convention == "literal" ? mobius::SelfEnergyConvention::Literal
                                             : mobius::SelfEnergyConvention::Surface;
  }
  if (*eta_opt) cfg.eta = eta;
  if (*omega_opt) cfg.omega = omega;
  if (*zeta_opt) cfg.zeta = zeta;
  if (*kp_opt) cfg.k_points = k_points;
  if (*dp_opt) cfg.delta_points = delta_points;

  return mobius::run(cfg, std::cerr);
}
