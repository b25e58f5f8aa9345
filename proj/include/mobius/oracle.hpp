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

/** @file oracle.hpp
 *  @brief Plane-wave mode matching for the two-terminal device.
 *
 *  Independent of the Green-function route: the leads are kept explicitly as
 *  plane waves, psi_l = e^{ik'(l+1)} + r e^{-ik'(l+1)} on the left (l <= -1)
 *  and psi_l = t e^{ik'(l-1)} on the right (l >= 1). Inserting this into the
 *  stationary equation of the full chain + ring + atom Hamiltonian leaves a
 *  square linear system in (r, t, device amplitudes). The semi-infinite
 *  leads are exact, so |t|^2 must agree with the surface-self-energy
 *  transmission to solver precision.
 */
#pragma once

#include "mobius/model.hpp"

namespace mobius {

struct ScatteringSolution {
  Complex r;
  Complex t;
  Eigen::VectorXcd device_amplitudes;
  double T = 0.0;

  double reflectance() const { return std::norm(r); }
};

/// Leads as seen by the scattering solver. Both chains share omega and zeta.
struct ScatteringLeads {
  double omega = 0.0;
  double zeta = 1.0;
  double kappa_left = 1.0;
  double kappa_right = 1.0;
  Eigen::Index left_row = 0;
  Eigen::Index right_row = 0;
};

/// Throws PreconditionError outside the open lead band and PoleError when
/// the matching system is singular.
ScatteringSolution solve_scattering(const DeviceMatrix& h, const ScatteringLeads& leads,
                                    double energy);

/// Same, for a validated device. Both leads must share omega and zeta
/// (ValidationError otherwise). The self-energy convention is ignored: the
/// physical chain is always solved.
ScatteringSolution solve_scattering(const Device& device, double energy);

}  // namespace mobius
