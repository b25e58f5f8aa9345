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
#include "mobius/experiments.hpp"

#include <doctest.h>

#include <numbers>

using namespace mobius;

namespace {
constexpr double kPi = std::numbers::pi;

bool same_curve(const TransmissionCurve& a, const TransmissionCurve& b) {
  if (a.samples.size() != b.samples.size()) return false;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const auto& x = a.samples[i];
    const auto& y = b.samples[i];
    if (x.sweep_value != y.sweep_value || x.energy_plus != y.energy_plus ||
        x.energy_minus != y.energy_minus || x.t_plus != y.t_plus || x.t_minus != y.t_minus ||
        x.propagating_plus != y.propagating_plus || x.propagating_minus != y.propagating_minus) {
      return false;
    }
  }
  return true;
}
}  // namespace

TEST_CASE("preset contents") {
  const Scenario a3 = preset("fig3a3");
  CHECK(a3.ring.N == 7);
  CHECK(a3.ring.V == 20.0);
  CHECK(a3.ring.xi == 1.0);
  CHECK(a3.left.attach == SiteIndex::upper(0));
  CHECK(a3.right.attach == SiteIndex::upper(3));
  CHECK(a3.band == BandId::Upper);
  CHECK(std::holds_alternative<MomentumSweep>(a3.sweep));
  CHECK(a3.left.omega == 20.0);
  CHECK(a3.left.zeta == 2.0);

  const Scenario f6 = preset("fig6");
  CHECK(f6.ring.N == 6);
  CHECK(f6.left.kappa == 3.0);
  CHECK(f6.right.kappa == 3.0);
  REQUIRE(f6.atom);
  CHECK(f6.atom->n == 2);
  CHECK(f6.right.attach == SiteIndex::upper(3));
  REQUIRE(std::holds_alternative<DetuningSweep>(f6.sweep));
  CHECK(std::get<DetuningSweep>(f6.sweep).k == doctest::Approx(4.0 * kPi / 6.0));

  const Scenario f2 = preset("fig2bands");
  CHECK(f2.ring.N == 7);
  CHECK(f2.ring.V == 10.0);
  CHECK(f2.ring.xi == 3.0);
  CHECK(std::holds_alternative<BandPlot>(f2.sweep));

  const Scenario lower = preset("fig4b");
  CHECK(lower.band == BandId::Lower);
  CHECK(lower.left.omega == -20.0);

  const Scenario f5 = preset("fig5c-n3");
  CHECK(f5.ring.N == 3);
  CHECK(f5.atom->n == 1);
  CHECK(f5.right.attach == SiteIndex::upper(2));

  for (const auto& name : preset_names()) CHECK_NOTHROW(preset(name).validate());
  CHECK_THROWS_AS(preset("fig7"), ValidationError);
  CHECK_THROWS_AS(preset("fig5a-n4"), ValidationError);
  CHECK_THROWS_AS(preset("fig5a-nx"), ValidationError);
}

TEST_CASE("grids") {
  const auto ks = momentum_grid(601);
  REQUIRE(ks.size() == 601);
  CHECK(ks.front() > 0.0);
  CHECK(ks.back() < kPi);
  CHECK(ks[300] == doctest::Approx(kPi / 2));

  const auto ds = detuning_grid(DetuningSweep{0.0, -10.0, 10.0, 801});
  REQUIRE(ds.size() == 801);
  CHECK(ds.front() == -10.0);
  CHECK(ds.back() == 10.0);
  CHECK(ds[400] == 0.0);
  CHECK(detuning_grid(DetuningSweep{0.0, 1.5, 3.0, 1}) == std::vector<double>{1.5});
}

TEST_CASE("lower band: both directions share the energy") {
  for (const char* name : {"fig4a", "fig4b"}) {
    const auto curve = sweep_momentum(preset(name));
    for (const auto& s : curve.samples) {
      CHECK(s.energy_plus == s.energy_minus);
      CHECK(s.t_plus == s.t_minus);
    }
    CHECK(nonreciprocity(curve).max_abs == 0.0);
  }
}

TEST_CASE("odd ring on the upper band is non-reciprocal near k = (N-1) pi / N") {
  Scenario s = preset("fig3a1");
  const auto curve = sweep_momentum(s);
  const auto nr = nonreciprocity(curve);
  CHECK(nr.max_abs > 0.05);
  CHECK(std::abs(nr.argmax - 2.0 * kPi / 3.0) <= kPi / 3.0);
  CHECK(nr.per_sample.size() == curve.samples.size());
  CHECK(std::abs(nr.per_sample[nr.argmax_index]) == nr.max_abs);
}

TEST_CASE("even ring with symmetric leads stays reciprocal") {
  const auto nr = nonreciprocity(sweep_momentum(preset("fig3b2")));
  CHECK(nr.max_abs < 1e-9);
  CHECK(nonreciprocity(sweep_momentum(preset("fig3b3"))).max_abs > 0.05);
}

TEST_CASE("detuning sweep: decoupled atom gives a flat, atom-free curve") {
  Scenario s = preset("fig5a");
  s.atom->gamma = 0.0;
  const auto curve = sweep_detuning(s);
  const Device d = validate_attachments(s.ring, s.left, s.right);
  const double tp = transmission(d, curve.samples.front().energy_plus);
  const double tm = transmission(d, curve.samples.front().energy_minus);
  for (const auto& x : curve.samples) {
    CHECK(x.t_plus == doctest::Approx(tp).epsilon(1e-12));
    CHECK(x.t_minus == doctest::Approx(tm).epsilon(1e-12));
  }
}

TEST_CASE("atom at the right contact blocks +k transmission for every detuning") {
  const auto curve = sweep_detuning(preset("fig5a"));
  double worst = 0.0;
  for (const auto& x : curve.samples) worst = std::max(worst, x.t_plus);
  CHECK(worst < 1e-6);
  // On resonance the atom pins the contact site in both directions.
  CHECK(std::abs(curve.samples[400].nr()) < 1e-9);

  const auto moved = sweep_detuning(preset("fig5b"));
  double best = 0.0;
  for (const auto& x : moved.samples) best = std::max(best, x.t_plus);
  CHECK(best > 1e-3);
  CHECK(std::abs(moved.samples[400].nr()) > 1e-6);
}

TEST_CASE("sample_device sets the atom frequency per direction") {
  const Scenario s = preset("fig6");
  const double k = std::get<DetuningSweep>(s.sweep).k;
  const Device plus = sample_device(s, 0.5, +1);
  const Device minus = sample_device(s, 0.5, -1);
  CHECK(plus.atom->omega_a == ring_dispersion(s.ring, BandId::Upper, k) - 0.5);
  CHECK(minus.atom->omega_a == ring_dispersion(s.ring, BandId::Upper, -k) - 0.5);
  const Scenario m = preset("fig3a1");
  CHECK(!sample_device(m, 0.3, 1).atom);
}

TEST_CASE("sweeps are deterministic") {
  CHECK(same_curve(sweep_momentum(preset("fig3a2")), sweep_momentum(preset("fig3a2"))));
  CHECK(same_curve(sweep_detuning(preset("fig6")), sweep_detuning(preset("fig6"))));
}

TEST_CASE("sweep preconditions") {
  Scenario s = preset("fig6");
  s.atom.reset();
  CHECK_THROWS_WITH_AS(sweep_detuning(s), doctest::Contains("atom"), ValidationError);
  CHECK_THROWS_AS(sweep_momentum(preset("fig6")), ValidationError);
  CHECK_THROWS_AS(run_sweep(preset("fig2bands")), ValidationError);
  Scenario bad = preset("fig3a1");
  bad.sweep = MomentumSweep{0};
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("non-propagating samples are flagged and zero") {
  Scenario s = preset("fig3a1");
  // Narrow leads: the upper branch spans [18, 22], the leads only (19.5, 20.5).
  s.left.zeta = s.right.zeta = 0.25;
  const auto curve = sweep_momentum(s);
  int closed = 0;
  for (const auto& x : curve.samples) {
    if (!x.propagating_plus) {
      ++closed;
      CHECK(x.t_plus == 0.0);
    }
  }
  CHECK(closed > 0);
}

TEST_CASE("nonreciprocity summary") {
  TransmissionCurve c;
  c.samples = {{0.1, 0, 0, 0.5, 0.5, true, true},
               {0.2, 0, 0, 0.1, 0.7, true, true},
               {0.3, 0, 0, 0.6, 0.2, true, true}};
  const auto nr = nonreciprocity(c);
  CHECK(nr.max_abs == doctest::Approx(0.6));
  CHECK(nr.argmax == 0.2);
  CHECK(nr.argmax_index == 1);
  CHECK(nr.per_sample[2] == doctest::Approx(0.4));
}

TEST_CASE("band table") {
  const auto rows = band_table(preset("fig2bands"));
  REQUIRE(rows.size() == 601);
  double lo = 1e9, hi = -1e9;
  for (const auto& r : rows) {
    lo = std::min(lo, r.upper);
    hi = std::max(hi, r.upper);
  }
  CHECK(lo == doctest::Approx(4.0).epsilon(1e-4));
  CHECK(hi == doctest::Approx(16.0).epsilon(1e-4));
}
