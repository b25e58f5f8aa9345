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

#include "mobius/model.hpp"

#include "mobius/errors.hpp"

#include <cmath>
#include <sstream>

namespace mobius {

namespace {

void set_bond(Eigen::MatrixXcd& h, Eigen::Index i, Eigen::Index j, double value) {
  h(i, j) = value;
  h(j, i) = value;
}

}  // namespace

void RingSpec::validate() const {
  if (N < 2) {
    throw ValidationError("ring.N must be >= 2 (got " + std::to_string(N) + ")");
  }
  if (xi == 0.0) {
    throw ValidationError("ring.xi must be nonzero (the ring would be disconnected)");
  }
  if (!std::isfinite(epsilon) || !std::isfinite(V) || !std::isfinite(xi)) {
    throw ValidationError("ring parameters must be finite");
  }
}

Eigen::Index SiteIndex::row(int N) const {
  switch (layer) {
    case Layer::UpperA:
      return j;
    case Layer::LowerB:
      return N + j;
    case Layer::Atom:
      return 2 * N;
  }
  return -1;
}

std::string SiteIndex::label() const {
  switch (layer) {
    case Layer::UpperA:
      return "a_" + std::to_string(j);
    case Layer::LowerB:
      return "b_" + std::to_string(j);
    case Layer::Atom:
      return "d";
  }
  return "?";
}

void LeadSpec::validate(int N) const {
  if (attach.layer != Layer::UpperA) {
    throw ValidationError("lead.attach must be an upper-layer site a_j (got " +
                          attach.label() + ")");
  }
  if (attach.j < 0 || attach.j >= N) {
    std::ostringstream msg;
    msg << "lead.attach out of range: " << attach.label() << " not in a_0..a_" << N - 1;
    throw ValidationError(msg.str());
  }
  if (!(zeta > 0.0)) {
    throw ValidationError("lead.zeta must be > 0");
  }
  if (!std::isfinite(omega) || !std::isfinite(zeta) || !std::isfinite(kappa)) {
    throw ValidationError("lead parameters must be finite");
  }
}

void AtomSpec::validate(int N) const {
  if (n < 0 || n >= N) {
    std::ostringstream msg;
    msg << "atom.n out of range: n=" << n << " must be in [0, " << N - 1 << "]";
    throw ValidationError(msg.str());
  }
  if (!std::isfinite(omega_a) || !std::isfinite(gamma)) {
    throw ValidationError("atom parameters must be finite");
  }
}

DeviceMatrix DeviceMatrix::from_entries(Eigen::MatrixXcd entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    throw ValidationError("device matrix must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < entries.rows(); ++i) {
    for (Eigen::Index j = i; j < entries.cols(); ++j) {
      if (entries(i, j) != std::conj(entries(j, i))) {
        throw ValidationError("device matrix must be Hermitian");
      }
    }
  }
  return DeviceMatrix(std::move(entries), 0, false);
}

DeviceMatrix build_ring(const RingSpec& spec) {
  spec.validate();
  const int n = spec.N;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  const auto a = [n](int j) { return SiteIndex::upper(j).row(n); };
  const auto b = [n](int j) { return SiteIndex::lower(j).row(n); };

  for (int j = 0; j < n; ++j) {
    h(a(j), a(j)) = spec.epsilon;
    h(b(j), b(j)) = spec.epsilon;
    set_bond(h, a(j), b(j), -spec.V);
  }
  for (int j = 0; j + 1 < n; ++j) {
    set_bond(h, a(j), a(j + 1), -spec.xi);
    set_bond(h, b(j), b(j + 1), -spec.xi);
  }
  // Half twist: a_N = b_0, b_N = a_0.
  set_bond(h, a(n - 1), b(0), -spec.xi);
  set_bond(h, b(n - 1), a(0), -spec.xi);

  return DeviceMatrix(std::move(h), n, false);
}

DeviceMatrix embed_atom(const DeviceMatrix& h, const AtomSpec& atom) {
  if (h.rungs() == 0 || h.dim() != 2 * h.rungs()) {
    throw ValidationError(h.has_atom() ? "device matrix already contains an atom"
                                       : "embed_atom needs a bare ring matrix");
  }
  const int n = h.rungs();
  atom.validate(n);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(2 * n + 1, 2 * n + 1);
  out.topLeftCorner(2 * n, 2 * n) = h.entries();
  const auto d = SiteIndex::atom().row(n);
  out(d, d) = atom.omega_a;
  set_bond(out, d, SiteIndex::upper(atom.n).row(n), atom.gamma);
  return DeviceMatrix(std::move(out), n, true);
}

DeviceMatrix Device::hamiltonian() const {
  DeviceMatrix h = build_ring(ring);
  return atom ? embed_atom(h, *atom) : h;
}

Device validate_attachments(const RingSpec& ring, const LeadSpec& left,
                            const LeadSpec& right, std::optional<AtomSpec> atom) {
  ring.validate();
  left.validate(ring.N);
  right.validate(ring.N);
  if (left.attach == right.attach) {
    throw ValidationError("left and right leads attach to the same site " +
                          left.attach.label());
  }
  if (atom) atom->validate(ring.N);
  return Device{ring, left, right, atom};
}

}  // namespace mobius
