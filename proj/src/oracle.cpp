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

#include "mobius/oracle.hpp"

#include "mobius/bands.hpp"
#include "mobius/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mobius {

ScatteringSolution solve_scattering(const DeviceMatrix& h, const ScatteringLeads& leads,
                                    double energy) {
  LeadSpec chain;
  chain.omega = leads.omega;
  chain.zeta = leads.zeta;
  if (!chain.propagates(energy)) {
    std::ostringstream msg;
    msg << "scattering solver needs a propagating lead mode: E=" << energy
        << " outside (" << chain.band_bottom() << ", " << chain.band_top() << ")";
    throw PreconditionError(msg.str());
  }
  const Eigen::Index d = h.dim();
  if (leads.left_row < 0 || leads.left_row >= d || leads.right_row < 0 ||
      leads.right_row >= d) {
    throw ValidationError("lead row outside the device matrix");
  }

  const double k = lead_momentum(chain, energy).real();
  const Complex fwd = std::exp(Complex(0.0, k));
  const Complex bwd = std::exp(Complex(0.0, -k));
  const double detune = energy - leads.omega;
  const double zeta = leads.zeta;

  // Unknowns: x = [r, t, psi_0 .. psi_{d-1}].
  constexpr Eigen::Index kR = 0;
  constexpr Eigen::Index kT = 1;
  const auto psi = [](Eigen::Index i) { return i + 2; };

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d + 2, d + 2);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(d + 2);

  // Left chain end, site -1: (E - w) psi_{-1} + zeta psi_{-2} - kL psi_L = 0,
  // psi_{-1} = 1 + r, psi_{-2} = e^{-ik} + r e^{ik}.
  a(0, kR) = detune + zeta * fwd;
  b(0) = -(detune + zeta * bwd);
  a(0, psi(leads.left_row)) = -leads.kappa_left;

  // Right chain end, site 1: psi_1 = t, psi_2 = t e^{ik}.
  a(1, kT) = detune + zeta * fwd;
  a(1, psi(leads.right_row)) = -leads.kappa_right;

  // Device: E psi_i - sum_j H_ij psi_j - kL d_iL psi_{-1} - kR d_iR psi_1 = 0.
  for (Eigen::Index i = 0; i < d; ++i) {
    a(psi(i), psi(i)) += energy;
    for (Eigen::Index j = 0; j < d; ++j) a(psi(i), psi(j)) -= h(i, j);
  }
  a(psi(leads.left_row), kR) -= leads.kappa_left;
  b(psi(leads.left_row)) += leads.kappa_left;
  a(psi(leads.right_row), kT) -= leads.kappa_right;

  // A state without weight on the contacts leaves r and t unique; the
  // minimum-norm solution drops it.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(1e-10);
  cod.compute(a);
  const Eigen::VectorXcd x = cod.solve(b);
  if (!((a * x - b).norm() <= 1e-10 * a.norm() * std::max(1.0, x.norm()))) {
    std::ostringstream msg;
    msg << "mode-matching system is singular at E=" << energy;
    throw PoleError(msg.str());
  }

  ScatteringSolution out;
  out.r = x(kR);
  out.t = x(kT);
  out.device_amplitudes = x.tail(d);
  out.T = std::norm(out.t);
  return out;
}

ScatteringSolution solve_scattering(const Device& device, double energy) {
  if (device.left.omega != device.right.omega || device.left.zeta != device.right.zeta) {
    throw ValidationError("scattering solver needs both leads to share omega and zeta");
  }
  ScatteringLeads leads;
  leads.omega = device.left.omega;
  leads.zeta = device.left.zeta;
  leads.kappa_left = device.left.kappa;
  leads.kappa_right = device.right.kappa;
  leads.left_row = device.left_row();
  leads.right_row = device.right_row();
  return solve_scattering(device.hamiltonian(), leads, energy);
}

}  // namespace mobius
