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

#include "mobius/negf.hpp"

#include "mobius/bands.hpp"
#include "mobius/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace mobius {

namespace {

constexpr double kPoleRcond = 1e-14;
constexpr double kBoundStateThreshold = 1e-10;

Eigen::MatrixXcd system_matrix(const DeviceMatrix& h, double energy, const Contact& left,
                               const Contact& right, double eta) {
  const Eigen::Index n = h.dim();
  if (left.row < 0 || left.row >= n || right.row < 0 || right.row >= n) {
    throw ValidationError("contact row outside the device matrix");
  }
  Eigen::MatrixXcd a = -h.entries();
  a.diagonal().array() += Complex(energy, eta);
  a(left.row, left.row) -= left.sigma.value;
  a(right.row, right.row) -= right.sigma.value;
  return a;
}

Eigen::PartialPivLU<Eigen::MatrixXcd> factorize(const Eigen::MatrixXcd& a, double energy,
                                                double eta) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!(lu.rcond() > kPoleRcond)) {
    std::ostringstream msg;
    msg << "singular resolvent at E=" << energy << " with eta=" << eta
        << " (energy sits on a bound state; use eta > 0)";
    throw PoleError(msg.str());
  }
  return lu;
}

/// Column of a^{-1} on the open system at eta = 0. States with no weight on
/// either contact make `a` singular without touching the contact entries of
/// G; they are projected out by the minimum-norm solution.
Eigen::VectorXcd open_column(const Eigen::MatrixXcd& a, Eigen::Index column, double energy,
                             double eta) {
  const Eigen::VectorXcd rhs = Eigen::VectorXcd::Unit(a.rows(), column);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (lu.rcond() > kPoleRcond) return lu.solve(rhs);
  if (eta == 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
    cod.setThreshold(kBoundStateThreshold);
    cod.compute(a);
    const Eigen::VectorXcd x = cod.solve(rhs);
    if ((a * x - rhs).norm() <= kBoundStateThreshold * a.norm() * std::max(1.0, x.norm())) return x;
  }
  factorize(a, energy, eta);
  return {};
}

/// Full inverse on the open system, with contact-free states projected out
/// as in open_column.
Eigen::MatrixXcd open_inverse(const Eigen::MatrixXcd& a, double energy, double eta) {
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (lu.rcond() > kPoleRcond) return lu.inverse();
  if (eta == 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
    cod.setThreshold(kBoundStateThreshold);
    cod.compute(a);
    const Eigen::MatrixXcd x = cod.pseudoInverse();
    const double tol = kBoundStateThreshold * std::max(1.0, a.norm() * x.norm());
    if ((a * x - x * a).norm() <= tol && (a * x * a - a).norm() <= tol * a.norm()) return x;
  }
  factorize(a, energy, eta);
  return {};
}

/// Rows reachable from `start` through nonzero off-diagonal entries.
std::vector<Eigen::Index> connected_component(const Eigen::MatrixXcd& h, Eigen::Index start) {
  const Eigen::Index n = h.rows();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<Eigen::Index> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  std::vector<Eigen::Index> out;
  while (!stack.empty()) {
    const Eigen::Index i = stack.back();
    stack.pop_back();
    out.push_back(i);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j != i && !seen[static_cast<std::size_t>(j)] && h(i, j) != Complex(0.0)) {
        seen[static_cast<std::size_t>(j)] = 1;
        stack.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SelfEnergy self_energy(const LeadSpec& lead, double energy) {
  const Complex phase = lead_phase(lead, energy);
  const double scale = lead.convention == SelfEnergyConvention::Surface
                           ? lead.kappa * lead.kappa / lead.zeta
                           : lead.kappa;
  return {-scale * phase, lead.convention};
}

Broadening broadening(const SelfEnergy& sigma) {
  // i (S - S*) = -2 Im S
  return {-2.0 * sigma.value.imag()};
}

double default_eta(const RingSpec& ring) {
  return 1e-9 * std::max({std::abs(ring.V), std::abs(ring.xi), 1.0});
}

GreenFunction green_function(const DeviceMatrix& h, double energy, const Contact& left,
                             const Contact& right, double eta) {
  const Eigen::MatrixXcd a = system_matrix(h, energy, left, right, eta);
  const auto lu = factorize(a, energy, eta);
  return {lu.solve(Eigen::MatrixXcd::Identity(a.rows(), a.cols()))};
}

Eigen::VectorXcd green_column(const DeviceMatrix& h, double energy, const Contact& left,
                              const Contact& right, double eta, Eigen::Index column) {
  const Eigen::MatrixXcd a = system_matrix(h, energy, left, right, eta);
  const auto lu = factorize(a, energy, eta);
  return lu.solve(Eigen::VectorXcd::Unit(a.rows(), column));
}

double transmission(const DeviceMatrix& h, double energy, const Contact& left,
                    const Contact& right, double eta) {
  const double gamma_l = broadening(left.sigma).value;
  const double gamma_r = broadening(right.sigma).value;
  if (gamma_l == 0.0 || gamma_r == 0.0) return 0.0;

  const Eigen::MatrixXcd full = system_matrix(h, energy, left, right, eta);
  const auto component = connected_component(h.entries(), left.row);
  const auto right_pos = std::find(component.begin(), component.end(), right.row);
  if (right_pos == component.end()) return 0.0;

  const auto m = static_cast<Eigen::Index>(component.size());
  Eigen::MatrixXcd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      a(i, j) = full(component[static_cast<std::size_t>(i)], component[static_cast<std::size_t>(j)]);
    }
  }
  const auto l = std::find(component.begin(), component.end(), left.row) - component.begin();
  const auto r = right_pos - component.begin();

  const Eigen::VectorXcd g = open_column(a, r, energy, eta);
  return gamma_l * gamma_r * std::norm(g(l));
}

namespace {

struct OpenDevice {
  DeviceMatrix h;
  Contact left;
  Contact right;
  double eta;
};

OpenDevice open_device(const Device& device, double energy, const SolverOptions& options) {
  Contact left{device.left_row(), self_energy(device.left, energy)};
  Contact right{device.right_row(), self_energy(device.right, energy)};
  double eta = 0.0;
  if (options.eta) {
    eta = *options.eta;
  } else if (broadening(left.sigma).value == 0.0 && broadening(right.sigma).value == 0.0) {
    eta = default_eta(device.ring);
  }
  return {device.hamiltonian(), left, right, eta};
}

}  // namespace

double transmission(const Device& device, double energy, const SolverOptions& options) {
  const auto open = open_device(device, energy, options);
  return transmission(open.h, energy, open.left, open.right, open.eta);
}

TraceIdentity transmission_traces(const Device& device, double energy,
                                  const SolverOptions& options) {
  const auto open = open_device(device, energy, options);
  const Eigen::Index n = open.h.dim();
  Eigen::MatrixXcd gamma_l = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd gamma_r = Eigen::MatrixXcd::Zero(n, n);
  gamma_l(open.left.row, open.left.row) = broadening(open.left.sigma).value;
  gamma_r(open.right.row, open.right.row) = broadening(open.right.sigma).value;
  if (gamma_l.isZero(0.0) || gamma_r.isZero(0.0)) return {0.0, 0.0};

  const Eigen::MatrixXcd g =
      open_inverse(system_matrix(open.h, energy, open.left, open.right, open.eta), energy, open.eta);
  const Eigen::MatrixXcd g_adj = g.adjoint();
  return {(gamma_l * g * gamma_r * g_adj).trace().real(),
          (gamma_r * g * gamma_l * g_adj).trace().real()};
}

}  // namespace mobius
