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

/** @file experiments.hpp
 *  @brief Scenario presets, transmission sweeps and the non-reciprocity metric.
 *
 *  An incident momentum k on a ring branch fixes the photon energy through
 *  the dispersion. The two incident directions correspond to +k and -k;
 *  non-reciprocity is T(E(+k)) - T(E(-k)).
 */
#pragma once

#include "mobius/bands.hpp"
#include "mobius/model.hpp"
#include "mobius/negf.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mobius {

/// T against |k| for k strictly inside (0, pi).
struct MomentumSweep {
  int k_points = 601;
};

/// T against the detuning Delta = E - Omega_A at fixed |k|. Each incident
/// direction sees its own detuning: Omega_A = E(+-k) - Delta.
struct DetuningSweep {
  double k = 0.0;
  double delta_min = -10.0;
  double delta_max = 10.0;
  int delta_points = 801;
};

/// Dispersion of both ring branches over (-pi, pi].
struct BandPlot {
  int k_points = 601;
};

using Sweep = std::variant<MomentumSweep, DetuningSweep, BandPlot>;

struct Scenario {
  RingSpec ring;
  LeadSpec left;
  LeadSpec right;
  std::optional<AtomSpec> atom;
  BandId band = BandId::Upper;
  Sweep sweep = MomentumSweep{};
  std::string label;
  SolverOptions solver;

  void validate() const;
  /// The validated device with the atom exactly as specified.
  Device device() const;
};

struct CurveSample {
  double sweep_value = 0.0;
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  double t_plus = 0.0;
  double t_minus = 0.0;
  bool propagating_plus = false;
  bool propagating_minus = false;

  double nr() const { return t_plus - t_minus; }
};

struct TransmissionCurve {
  std::vector<CurveSample> samples;
};

/// Lead with the default parameters for a branch: omega at the branch
/// centre, zeta = 2 xi, so the lead band covers the whole branch.
LeadSpec default_lead(const RingSpec& ring, BandId band, int site, double kappa = 1.0);

std::vector<double> momentum_grid(int points);
std::vector<double> detuning_grid(const DetuningSweep& sweep);

/// Device for one sample of a scenario: `direction` is +1 or -1. For a
/// detuning sweep the atom frequency is set from the sample's detuning.
Device sample_device(const Scenario& s, double sweep_value, int direction);
double sample_energy(const Scenario& s, int direction, double k);

TransmissionCurve sweep_momentum(const Scenario& s);
TransmissionCurve sweep_detuning(const Scenario& s);
/// Dispatches on the sweep kind. Throws ValidationError for a BandPlot.
TransmissionCurve run_sweep(const Scenario& s);

struct NonreciprocitySummary {
  std::vector<double> per_sample;
  double max_abs = 0.0;
  double argmax = 0.0;
  std::size_t argmax_index = 0;
};

NonreciprocitySummary nonreciprocity(const TransmissionCurve& curve);

struct BandRow {
  double k;
  double upper;
  double lower;
};

std::vector<BandRow> band_table(const Scenario& s);

/// Named parameter sets. Also accepts "fig5a-n<N>" (and fig5b/fig5c) to pick
/// another odd ring size. Throws ValidationError for unknown names.
Scenario preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace mobius
