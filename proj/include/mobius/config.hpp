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

/** @file config.hpp
 *  @brief Flat key-value scenario files and run options.
 *
 *  Format:
 *
 *      # comment
 *      [ring]
 *      N = 7
 *      V = 20
 *      xi = 1
 *      [lead.left]
 *      attach = a_0
 *      [lead.right]
 *      attach = a_3
 *      [atom]
 *      n = 3
 *      [sweep]
 *      band = upper
 *      kind = detuning
 *      k = 6*pi/7
 *      [run]
 *      label = custom
 *
 *  Sections: [ring], [lead.left], [lead.right], [atom], [sweep], [run]. Keys
 *  are the field names of the corresponding types. Unknown sections, unknown
 *  keys and repeated keys are errors. Real values accept plain numbers and
 *  the forms `pi`, `a*pi`, `pi/b`, `a*pi/b`.
 */
#pragma once

#include "mobius/experiments.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace mobius {

struct RunConfig {
  std::string preset;
  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  std::optional<SelfEnergyConvention> convention;
  std::optional<double> eta;
  std::optional<double> omega;
  std::optional<double> zeta;
  std::optional<int> k_points;
  std::optional<int> delta_points;
  bool cross_check = false;
  std::uint64_t seed = 1;
};

struct ParsedConfig {
  Scenario scenario;
  RunConfig run;
};

/// Parses and validates a scenario file. Syntax problems raise
/// ValidationError("line L: ..."); constraint violations name the field.
ParsedConfig parse_config(std::string_view text);

/// Writes every field explicitly; doubles use 17 significant digits so the
/// text re-parses to the identical scenario.
std::string serialize_config(const Scenario& scenario, const RunConfig& run = {});

/// Applies command-line overrides (convention, eta, omega, zeta, grid sizes)
/// and re-validates.
void apply_overrides(Scenario& scenario, const RunConfig& run);

/// Parses a real value in the config grammar. Throws ValidationError.
double parse_real(std::string_view text);

std::string_view to_string(SelfEnergyConvention convention);

}  // namespace mobius
