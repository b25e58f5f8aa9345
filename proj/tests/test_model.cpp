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

#include "mobius/errors.hpp"
#include "mobius/model.hpp"
#include "mobius/negf.hpp"
#include "support.hpp"

#include <doctest.h>

#include <queue>
#include <random>

using namespace mobius;

namespace {

/// Degrees and cycle structure of the nonzero off-diagonal pattern.
struct BondGraph {
  std::vector<std::vector<Eigen::Index>> adj;

  explicit BondGraph(const Eigen::MatrixXcd& h) : adj(static_cast<std::size_t>(h.rows())) {
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
      for (Eigen::Index j = 0; j < h.cols(); ++j) {
        if (i != j && h(i, j) != Complex(0.0)) adj[static_cast<std::size_t>(i)].push_back(j);
      }
    }
  }

  std::vector<std::size_t> component_sizes() const {
    std::vector<char> seen(adj.size(), 0);
    std::vector<std::size_t> sizes;
    for (std::size_t s = 0; s < adj.size(); ++s) {
      if (seen[s]) continue;
      std::size_t count = 0;
      std::queue<std::size_t> q;
      q.push(s);
      seen[s] = 1;
      while (!q.empty()) {
        const auto i = q.front();
        q.pop();
        ++count;
        for (const auto j : adj[i]) {
          if (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = 1;
            q.push(static_cast<std::size_t>(j));
          }
        }
      }
      sizes.push_back(count);
    }
    return sizes;
  }

  bool all_degree(std::size_t d) const {
    return std::all_of(adj.begin(), adj.end(), [d](const auto& a) { return a.size() == d; });
  }
};

/// The same ladder with ordinary periodic closure, built only for the
/// topology comparison.
Eigen::MatrixXcd untwisted(const RingSpec& s) {
  Eigen::MatrixXcd h = build_ring(s).entries();
  const int n = s.N;
  h(n - 1, n) = h(n, n - 1) = 0.0;
  h(2 * n - 1, 0) = h(0, 2 * n - 1) = 0.0;
  h(n - 1, 0) = h(0, n - 1) = -s.xi;
  h(2 * n - 1, n) = h(n, 2 * n - 1) = -s.xi;
  return h;
}

}  // namespace

TEST_CASE("build_ring: smallest ring has the twist bonds and three -1 neighbours per site") {
  const DeviceMatrix h = build_ring({2, 0.0, 1.0, 1.0});
  REQUIRE(h.dim() == 4);
  CHECK(h(1, 2) == Complex(-1.0));  // a_1 - b_0
  CHECK(h(3, 0) == Complex(-1.0));  // b_1 - a_0
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(h(i, i) == Complex(0.0));
    int minus_ones = 0;
    for (Eigen::Index j = 0; j < 4; ++j) {
      if (i != j && h(i, j) == Complex(-1.0)) ++minus_ones;
    }
    CHECK(minus_ones == 3);
  }
}

TEST_CASE("build_ring: bond placement for a generic ring") {
  const RingSpec s{5, 0.5, 2.0, 0.75};
  const DeviceMatrix h = build_ring(s);
  const auto a = [&](int j) { return SiteIndex::upper(j).row(s.N); };
  const auto b = [&](int j) { return SiteIndex::lower(j).row(s.N); };
  for (int j = 0; j < s.N; ++j) {
    CHECK(h(a(j), a(j)) == Complex(0.5));
    CHECK(h(b(j), b(j)) == Complex(0.5));
    CHECK(h(a(j), b(j)) == Complex(-2.0));
  }
  for (int j = 0; j + 1 < s.N; ++j) {
    CHECK(h(a(j), a(j + 1)) == Complex(-0.75));
    CHECK(h(b(j), b(j + 1)) == Complex(-0.75));
  }
  CHECK(h(a(4), b(0)) == Complex(-0.75));
  CHECK(h(b(4), a(0)) == Complex(-0.75));
  CHECK(h(a(4), a(0)) == Complex(0.0));
  CHECK(h(b(4), b(0)) == Complex(0.0));
}

TEST_CASE("build_ring: matrices are exactly Hermitian and real") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const RingSpec s{2 + trial % 9, u(rng), u(rng), u(rng) + 5.5};
    const DeviceMatrix h = embed_atom(build_ring(s), {u(rng), u(rng), trial % s.N});
    CHECK((h.entries() - h.entries().adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(h.entries().imag().cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("build_ring: V = 0 merges both legs into one loop of length 2N") {
  const RingSpec s{3, 0.0, 0.0, 1.0};
  const DeviceMatrix h = build_ring(s);
  const BondGraph g(h.entries());
  CHECK(g.all_degree(2));
  CHECK(g.component_sizes() == std::vector<std::size_t>{6});
  for (Eigen::Index i = 0; i < 6; ++i) {
    for (Eigen::Index j = 0; j < 6; ++j) {
      const auto v = h(i, j);
      CHECK((v == Complex(0.0) || v == Complex(-1.0)));
    }
  }
}

TEST_CASE("twist topology: one 2N cycle twisted, two N cycles untwisted") {
  for (int n = 2; n <= 9; ++n) {
    CAPTURE(n);
    const RingSpec s{n, 0.0, 0.0, 1.0};
    const BondGraph twisted(build_ring(s).entries());
    CHECK(twisted.component_sizes() == std::vector<std::size_t>{static_cast<std::size_t>(2 * n)});
    if (n >= 3) {
      const BondGraph plain(untwisted(s));
      CHECK(plain.all_degree(2));
      CHECK(plain.component_sizes() ==
            std::vector<std::size_t>{static_cast<std::size_t>(n), static_cast<std::size_t>(n)});
    }
  }
}

TEST_CASE("build_ring: N = 7, V = 10, xi = 3 spectrum") {
  const RingSpec s{7, 0.0, 10.0, 3.0};
  const auto ev = testing::sorted_eigenvalues(build_ring(s));
  // Rung-sum branch: -10 - 6 cos(2 pi m / 7). Rung-difference branch is
  // antiperiodic: 10 - 6 cos((2m + 1) pi / 7).
  CHECK(testing::max_abs_diff(ev, testing::ladder_spectrum(s)) < 1e-10);
  CHECK(ev.front() == doctest::Approx(-16.0).epsilon(1e-12));
  CHECK(ev.back() == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("spectrum equivalence: dense eigensolver against the gauge-basis levels") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 60; ++trial) {
    RingSpec s{2 + trial % 11, u(rng), 8.0 * u(rng), u(rng)};
    if (s.xi == 0.0) s.xi = 1.0;
    CAPTURE(s.N);
    const auto ev = testing::sorted_eigenvalues(build_ring(s));
    CHECK(testing::max_abs_diff(ev, ring_levels(s)) < 1e-10);
    CHECK(testing::max_abs_diff(ev, testing::ladder_spectrum(s)) < 1e-10);
  }
}

TEST_CASE("build_ring: invalid specs") {
  CHECK_THROWS_AS(build_ring({1, 0.0, 1.0, 1.0}), ValidationError);
  CHECK_THROWS_WITH_AS(build_ring({4, 0.0, 1.0, 0.0}), doctest::Contains("xi"), ValidationError);
  CHECK_THROWS_WITH_AS(build_ring({0, 0.0, 1.0, 1.0}), doctest::Contains("N"), ValidationError);
}

TEST_CASE("embed_atom: direct construction") {
  const DeviceMatrix ring = build_ring({3, 0.0, 20.0, 1.0});
  const DeviceMatrix h = embed_atom(ring, {5.0, 2.0, 1});
  REQUIRE(h.dim() == 7);
  CHECK(h.has_atom());
  CHECK(h(6, 1) == Complex(2.0));
  CHECK(h(1, 6) == Complex(2.0));
  CHECK(h(6, 6) == Complex(5.0));
  CHECK(h.entries().topLeftCorner(6, 6) == ring.entries());
  for (Eigen::Index j = 0; j < 6; ++j) {
    if (j != 1) CHECK(h(6, j) == Complex(0.0));
  }
}

TEST_CASE("embed_atom: errors") {
  const DeviceMatrix ring = build_ring({3, 0.0, 20.0, 1.0});
  CHECK_THROWS_WITH_AS(embed_atom(ring, {0.0, 1.0, 3}), doctest::Contains("n out of range"),
                       ValidationError);
  CHECK_THROWS_AS(embed_atom(ring, {0.0, 1.0, -1}), ValidationError);
  const DeviceMatrix with_atom = embed_atom(ring, {0.0, 1.0, 0});
  CHECK_THROWS_WITH_AS(embed_atom(with_atom, {0.0, 1.0, 0}), doctest::Contains("already"),
                       ValidationError);
}

TEST_CASE("embed_atom: gamma = 0 leaves the transmission of the bare ring") {
  const RingSpec s{5, 0.0, 20.0, 1.0};
  LeadSpec left{20.0, 2.0, 1.0, SiteIndex::upper(0)};
  LeadSpec right{20.0, 2.0, 1.0, SiteIndex::upper(2)};
  const Device bare = validate_attachments(s, left, right);
  for (const double omega_a : {17.0, 19.3, 21.0}) {
    const Device dressed = validate_attachments(s, left, right, AtomSpec{omega_a, 0.0, 2});
    for (double e = 16.5; e < 23.5; e += 0.37) {
      CHECK(transmission(dressed, e) == doctest::Approx(transmission(bare, e)).epsilon(1e-12));
    }
    // Atom exactly at the photon energy stays decoupled.
    CHECK(transmission(dressed, omega_a) ==
          doctest::Approx(transmission(bare, omega_a)).epsilon(1e-12));
  }
}

TEST_CASE("validate_attachments") {
  LeadSpec left{20.0, 2.0, 1.0, SiteIndex::upper(0)};
  LeadSpec right{20.0, 2.0, 1.0, SiteIndex::upper(3)};
  CHECK_NOTHROW(validate_attachments({7, 0.0, 20.0, 1.0}, left, right));

  right.attach = SiteIndex::upper(2);
  CHECK_NOTHROW(validate_attachments({6, 0.0, 20.0, 1.0}, left, right));

  right.attach = SiteIndex::upper(0);
  CHECK_THROWS_WITH_AS(validate_attachments({7, 0.0, 20.0, 1.0}, left, right),
                       doctest::Contains("same site"), ValidationError);

  right.attach = SiteIndex::upper(7);
  CHECK_THROWS_WITH_AS(validate_attachments({7, 0.0, 20.0, 1.0}, left, right),
                       doctest::Contains("out of range"), ValidationError);

  right.attach = SiteIndex::lower(3);
  CHECK_THROWS_WITH_AS(validate_attachments({7, 0.0, 20.0, 1.0}, left, right),
                       doctest::Contains("upper-layer"), ValidationError);

  right.attach = SiteIndex::upper(3);
  right.zeta = 0.0;
  CHECK_THROWS_WITH_AS(validate_attachments({7, 0.0, 20.0, 1.0}, left, right),
                       doctest::Contains("zeta"), ValidationError);
}

TEST_CASE("site index mapping") {
  CHECK(SiteIndex::upper(4).row(7) == 4);
  CHECK(SiteIndex::lower(4).row(7) == 11);
  CHECK(SiteIndex::atom().row(7) == 14);
  CHECK(SiteIndex::upper(3).label() == "a_3");
}

TEST_CASE("DeviceMatrix::from_entries rejects non-Hermitian input") {
  Eigen::MatrixXcd m(2, 2);
  m << 0.0, Complex(1.0, 1.0), Complex(1.0, 1.0), 0.0;
  CHECK_THROWS_AS(DeviceMatrix::from_entries(m), ValidationError);
  m(1, 0) = Complex(1.0, -1.0);
  CHECK_NOTHROW(DeviceMatrix::from_entries(m));
  CHECK_THROWS_AS(DeviceMatrix::from_entries(Eigen::MatrixXcd(2, 3)), ValidationError);
}
