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

#include "mobius/bands.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mobius {

std::string_view to_string(BandId band) {
  return band == BandId::Upper ? "upper" : "lower";
}

double ring_dispersion(const RingSpec& spec, BandId band, double k) {
  if (band == BandId::Upper) {
    return spec.epsilon + spec.V - 2.0 * spec.xi * std::cos(k - std::numbers::pi / spec.N);
  }
  return spec.epsilon - spec.V - 2.0 * spec.xi * std::cos(k);
}

std::pair<double, double> band_edges(const RingSpec& spec, BandId band) {
  const double center = band == BandId::Upper ? spec.epsilon + spec.V : spec.epsilon - spec.V;
  const double half = 2.0 * std::abs(spec.xi);
  return {center - half, center + half};
}

double symmetry_axis(const RingSpec& spec, BandId band) {
  return band == BandId::Upper ? std::numbers::pi / spec.N : 0.0;
}

std::vector<double> ring_levels(const RingSpec& spec) {
  std::vector<double> levels;
  levels.reserve(2 * static_cast<std::size_t>(spec.N));
  for (int m = 0; m < spec.N; ++m) {
    const double k = 2.0 * std::numbers::pi * m / spec.N;
    levels.push_back(ring_dispersion(spec, BandId::Upper, k));
    levels.push_back(ring_dispersion(spec, BandId::Lower, k));
  }
  std::sort(levels.begin(), levels.end());
  return levels;
}

std::complex<double> lead_momentum(const LeadSpec& lead, double energy) {
  const double x = (lead.omega - energy) / (2.0 * lead.zeta);  // cos k'
  if (x > 1.0) return {0.0, std::acosh(x)};
  if (x < -1.0) return {std::numbers::pi, std::acosh(-x)};
  return {std::acos(x), 0.0};
}

std::complex<double> lead_phase(const LeadSpec& lead, double energy) {
  const double x = (lead.omega - energy) / (2.0 * lead.zeta);
  if (std::abs(x) <= 1.0) {
    return {x, std::sqrt((1.0 - x) * (1.0 + x))};
  }
  // exp(-q) with cosh q = |x|, written to avoid cancellation.
  const double ax = std::abs(x);
  const double decay = 1.0 / (ax + std::sqrt((ax - 1.0) * (ax + 1.0)));
  return {x > 0.0 ? decay : -decay, 0.0};
}

std::vector<DispersionSample> dispersion_table(const RingSpec& spec, BandId band,
                                               int points) {
  std::vector<DispersionSample> out;
  out.reserve(static_cast<std::size_t>(std::max(points, 0)));
  for (int i = 0; i < points; ++i) {
    // (-pi, pi], endpoint pi included.
    const double k = std::numbers::pi * (-1.0 + 2.0 * (i + 1) / points);
    out.push_back({k, ring_dispersion(spec, band, k)});
  }
  return out;
}

}  // namespace mobius
