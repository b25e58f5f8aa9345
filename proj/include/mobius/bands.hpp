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

/** @file bands.hpp
 *  @brief Closed-form dispersions of the twisted ring and of the chain leads.
 *
 *  In the gauge-rotated basis the ring splits into an upper branch
 *  E_up(k) = eps + V - 2 xi cos(k - pi/N) and a lower branch
 *  E_lo(k) = eps - V - 2 xi cos(k). Both gauge-rotated fields are periodic,
 *  so the closed ring has levels at k = 2 pi m / N on each branch.
 */
#pragma once

#include "mobius/model.hpp"

#include <complex>
#include <string_view>
#include <utility>
#include <vector>

namespace mobius {

enum class BandId { Upper, Lower };

std::string_view to_string(BandId band);

struct DispersionSample {
  double k = 0.0;
  double energy = 0.0;
};

double ring_dispersion(const RingSpec& spec, BandId band, double k);

/// (min, max) of the branch: (eps +- V - 2 xi, eps +- V + 2 xi) for xi > 0.
std::pair<double, double> band_edges(const RingSpec& spec, BandId band);

/// Momentum about which the branch is mirror-symmetric.
double symmetry_axis(const RingSpec& spec, BandId band);

/// Analytic spectrum of the closed ring: both branches sampled at
/// k = 2 pi m / N, m = 0..N-1, sorted ascending.
std::vector<double> ring_levels(const RingSpec& spec);

/// Solves energy = omega - 2 zeta cos(k') for the lead momentum.
///
/// Inside the band k' is real in [0, pi]. Below the band k' = i q, above it
/// k' = pi + i q, with q = arccosh(|energy - omega| / (2 zeta)) >= 0 so the
/// lead wave decays away from the device.
std::complex<double> lead_momentum(const LeadSpec& lead, double energy);

/// exp(i k') for the momentum returned by lead_momentum, evaluated from
/// cos k' and sin k' directly so that band edges give an exactly real phase.
std::complex<double> lead_phase(const LeadSpec& lead, double energy);

/// Uniform (k, energy) table over (-pi, pi] for plotting one branch.
std::vector<DispersionSample> dispersion_table(const RingSpec& spec, BandId band,
                                               int points);

}  // namespace mobius
