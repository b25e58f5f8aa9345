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

// Shared helpers for the unit and acceptance suites.
#pragma once

#include "mobius/bands.hpp"
#include "mobius/model.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>
#include <vector>

namespace mobius::testing {

inline std::vector<double> sorted_eigenvalues(const DeviceMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries(), Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end());
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

/// Real-space spectrum of the twisted ladder worked out directly: the rung
/// sum (a+b) is periodic around the ring, the rung difference (a-b) is
/// antiperiodic.
inline std::vector<double> ladder_spectrum(const RingSpec& s) {
  std::vector<double> out;
  const double pi = 3.14159265358979323846;
  for (int m = 0; m < s.N; ++m) {
    out.push_back(s.epsilon - s.V - 2.0 * s.xi * std::cos(2.0 * pi * m / s.N));
    out.push_back(s.epsilon + s.V - 2.0 * s.xi * std::cos((2.0 * m + 1.0) * pi / s.N));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct RandomInstance {
  Device device;
  double energy;
};

/// Random device + in-band energy over N in [2,8], V in [0,25], xi in (0,4],
/// kappa in (0,4], optional atom.
inline RandomInstance random_instance(std::mt19937_64& rng, bool with_atom) {
  std::uniform_int_distribution<int> pick_n(2, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RingSpec ring{pick_n(rng), 0.0, 25.0 * unit(rng), 4.0 * (1.0 - unit(rng))};
  std::uniform_int_distribution<int> site(0, ring.N - 1);
  const int l = site(rng);
  int r = site(rng);
  while (r == l) r = site(rng);

  const double kappa = 4.0 * (1.0 - unit(rng));
  // Lead band centred somewhere across the ring spectrum.
  const double omega = ring.epsilon + (2.0 * unit(rng) - 1.0) * (ring.V + 2.0 * ring.xi);
  const double zeta = 0.5 + 3.5 * unit(rng);
  LeadSpec left{omega, zeta, kappa, SiteIndex::upper(l)};
  LeadSpec right{omega, zeta, kappa, SiteIndex::upper(r)};

  std::optional<AtomSpec> atom;
  if (with_atom) {
    atom = AtomSpec{omega + (2.0 * unit(rng) - 1.0) * 2.0 * zeta, 3.0 * unit(rng), site(rng)};
  }
  // Strictly inside the lead band.
  const double energy = omega + (2.0 * unit(rng) - 1.0) * 2.0 * zeta * 0.999;
  return {validate_attachments(ring, left, right, atom), energy};
}

}  // namespace mobius::testing
