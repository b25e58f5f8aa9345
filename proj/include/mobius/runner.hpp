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

#pragma once

#include "mobius/config.hpp"

#include <iosfwd>

namespace mobius {

/// Exit codes of the command-line runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitSolver = 2,
  kExitCrossCheck = 3,
};

/// |T_negf - T_oracle| at or above this fails a cross-check.
inline constexpr double kCrossCheckTolerance = 1e-8;

/// Loads the scenario named by `cfg` (preset or config file), applies the
/// overrides, runs it and writes curve.csv / summary.txt / plot.gp (and
/// oracle.csv with cross_check) into cfg.out_dir. Band-plot scenarios write
/// bands.csv and levels.csv instead of curve.csv.
///
/// Errors are reported as a single line on `err`:
///   error: kind=<validation|solver|cross-check> message="..."
int run(const RunConfig& cfg, std::ostream& err);

/// Scenario selected by cfg after overrides; throws on failure.
ParsedConfig load_scenario(const RunConfig& cfg);

}  // namespace mobius
