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

/** @file negf.hpp
 *  @brief Lead self-energies, retarded Green function and transmission.
 *
 *  G = [(E + i eta) I - H - Sigma_L - Sigma_R]^{-1}, Gamma = i (Sigma - Sigma^+),
 *  T = Tr[Gamma_L G Gamma_R G^+]. Each lead touches a single device site, so
 *  the trace collapses to Gamma_L Gamma_R |G(l, r)|^2 and only one column of
 *  G is ever solved for.
 */
#pragma once

#include "mobius/model.hpp"

#include <optional>

namespace mobius {

struct SelfEnergy {
  Complex value;
  SelfEnergyConvention convention = SelfEnergyConvention::Surface;
};

struct Broadening {
  double value = 0.0;
};

/// A lead as seen by the device: the row it touches and its self-energy.
struct Contact {
  Eigen::Index row = 0;
  SelfEnergy sigma;
};

struct GreenFunction {
  Eigen::MatrixXcd matrix;
};

struct SolverOptions {
  /// Broadening of the energy. Unset: 0 when a lead is open at this energy,
  /// otherwise 1e-9 * max(|V|, |xi|, 1) of the ring.
  std::optional<double> eta;
};

/// Surface: -(kappa^2/zeta) e^{ik'}. Literal: -kappa e^{ik'}.
SelfEnergy self_energy(const LeadSpec& lead, double energy);

Broadening broadening(const SelfEnergy& sigma);

double default_eta(const RingSpec& ring);

/// Full inverse, for diagnostics. Throws PoleError if the system is singular.
GreenFunction green_function(const DeviceMatrix& h, double energy, const Contact& left,
                             const Contact& right, double eta);

/// Column `column` of G, from one LU solve.
Eigen::VectorXcd green_column(const DeviceMatrix& h, double energy, const Contact& left,
                              const Contact& right, double eta, Eigen::Index column);

/// Gamma_L Gamma_R |G(l, r)|^2, restricted to the part of the device that is
/// connected to the left contact. Zero when either lead is closed.
double transmission(const DeviceMatrix& h, double energy, const Contact& left,
                    const Contact& right, double eta);

double transmission(const Device& device, double energy, const SolverOptions& options = {});

/// Both orderings of the trace formula, evaluated with dense matrix products
/// on the full Green function.
struct TraceIdentity {
  double left_to_right = 0.0;  // Tr[Gamma_L G Gamma_R G^+]
  double right_to_left = 0.0;  // Tr[Gamma_R G Gamma_L G^+]
};

TraceIdentity transmission_traces(const Device& device, double energy,
                                  const SolverOptions& options = {});

}  // namespace mobius
