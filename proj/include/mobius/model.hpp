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

/** @file model.hpp
 *  @brief Real-space Hamiltonian of a twisted (Moebius) two-leg cavity ring.
 *
 *  The ring has N rungs. Site a_j sits on the upper leg and b_j on the lower
 *  leg; the two legs are glued with a half twist so that a_N = b_0 and
 *  b_N = a_0. An optional two-level atom d couples to one upper-leg cavity.
 *
 *  Matrix layout: a_j -> j, b_j -> N + j, d -> 2N.
 */
#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>

namespace mobius {

using Complex = std::complex<double>;

struct RingSpec {
  int N = 0;
  double epsilon = 0.0;
  double V = 0.0;
  double xi = 0.0;

  /// Throws ValidationError if N < 2 or xi == 0.
  void validate() const;
};

enum class Layer { UpperA, LowerB, Atom };

struct SiteIndex {
  Layer layer = Layer::UpperA;
  int j = 0;

  static SiteIndex upper(int j) { return {Layer::UpperA, j}; }
  static SiteIndex lower(int j) { return {Layer::LowerB, j}; }
  static SiteIndex atom() { return {Layer::Atom, 0}; }

  /// Matrix row for a ring with N rungs.
  Eigen::Index row(int N) const;

  /// "a_3", "b_0", "d".
  std::string label() const;

  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

enum class SelfEnergyConvention { Literal, Surface };

/// Semi-infinite chain lead: on-site omega, hopping -zeta, and a coupling
/// kappa to one upper-leg ring cavity.
struct LeadSpec {
  double omega = 0.0;
  double zeta = 1.0;
  double kappa = 1.0;
  SiteIndex attach;
  SelfEnergyConvention convention = SelfEnergyConvention::Surface;

  void validate(int N) const;

  double band_bottom() const { return omega - 2.0 * zeta; }
  double band_top() const { return omega + 2.0 * zeta; }
  /// True strictly inside the lead band; the band edges carry no current.
  bool propagates(double energy) const {
    return energy > band_bottom() && energy < band_top();
  }
};

struct AtomSpec {
  double omega_a = 0.0;
  double gamma = 0.0;
  int n = 0;

  void validate(int N) const;
};

/// Dense Hermitian matrix of the closed device. Immutable once built.
class DeviceMatrix {
 public:
  /// Wraps an arbitrary matrix. Throws ValidationError unless it is square
  /// and exactly Hermitian. The result carries no ring metadata.
  static DeviceMatrix from_entries(Eigen::MatrixXcd entries);

  const Eigen::MatrixXcd& entries() const { return entries_; }
  Eigen::Index dim() const { return entries_.rows(); }
  /// Number of rungs, or 0 for a matrix not built by build_ring.
  int rungs() const { return rungs_; }
  bool has_atom() const { return has_atom_; }

  Complex operator()(Eigen::Index i, Eigen::Index j) const {
    return entries_(i, j);
  }

 private:
  DeviceMatrix(Eigen::MatrixXcd entries, int rungs, bool has_atom)
      : entries_(std::move(entries)), rungs_(rungs), has_atom_(has_atom) {}

  Eigen::MatrixXcd entries_;
  int rungs_ = 0;
  bool has_atom_ = false;

  friend DeviceMatrix build_ring(const RingSpec&);
  friend DeviceMatrix embed_atom(const DeviceMatrix&, const AtomSpec&);
};

DeviceMatrix build_ring(const RingSpec& spec);

/// Appends the atom row/column: Omega_A on the diagonal and +gamma between
/// the atom and a_n. Throws ValidationError if h is not a bare ring or n is
/// out of range.
DeviceMatrix embed_atom(const DeviceMatrix& h, const AtomSpec& atom);

/// A validated two-terminal device: ring, both leads, optional atom.
struct Device {
  RingSpec ring;
  LeadSpec left;
  LeadSpec right;
  std::optional<AtomSpec> atom;

  DeviceMatrix hamiltonian() const;
  Eigen::Index left_row() const { return left.attach.row(ring.N); }
  Eigen::Index right_row() const { return right.attach.row(ring.N); }
};

/// Checks the ring, both leads (distinct, in-range upper-leg sites) and the
/// atom, and bundles them.
Device validate_attachments(const RingSpec& ring, const LeadSpec& left,
                            const LeadSpec& right,
                            std::optional<AtomSpec> atom = std::nullopt);

}  // namespace mobius
