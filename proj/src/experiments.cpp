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

#include "mobius/experiments.hpp"

#include "mobius/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace mobius {

namespace {

constexpr double kPi = std::numbers::pi;

/// Runs body(i) for i in [0, n) on a few worker threads. Results must be
/// written by index; the first exception is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t n, Body body) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, n / 64 + 1);
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run_range = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) body(i);
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  if (workers <= 1) {
    run_range(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(run_range, begin, end);
    }
  }
  if (error) std::rethrow_exception(error);
}

bool propagates(const Device& device, double energy) {
  return device.left.propagates(energy) && device.right.propagates(energy);
}

}  // namespace

void Scenario::validate() const {
  validate_attachments(ring, left, right, atom);
  if (const auto* m = std::get_if<MomentumSweep>(&sweep)) {
    if (m->k_points < 1) throw ValidationError("sweep.k_points must be >= 1");
  } else if (const auto* d = std::get_if<DetuningSweep>(&sweep)) {
    if (!atom) throw ValidationError("detuning sweep requires an [atom]");
    if (d->delta_points < 1) throw ValidationError("sweep.delta_points must be >= 1");
    if (!(d->delta_min <= d->delta_max)) {
      throw ValidationError("sweep.delta_min must not exceed sweep.delta_max");
    }
    if (!std::isfinite(d->k)) throw ValidationError("sweep.k must be finite");
  } else if (const auto* b = std::get_if<BandPlot>(&sweep)) {
    if (b->k_points < 2) throw ValidationError("sweep.k_points must be >= 2");
  }
  if (solver.eta && !(*solver.eta >= 0.0)) throw ValidationError("run.eta must be >= 0");
}

Device Scenario::device() const {
  validate();
  return Device{ring, left, right, atom};
}

LeadSpec default_lead(const RingSpec& ring, BandId band, int site, double kappa) {
  LeadSpec lead;
  lead.omega = band == BandId::Upper ? ring.epsilon + ring.V : ring.epsilon - ring.V;
  lead.zeta = 2.0 * std::abs(ring.xi);
  lead.kappa = kappa;
  lead.attach = SiteIndex::upper(site);
  return lead;
}

std::vector<double> momentum_grid(int points) {
  std::vector<double> ks;
  ks.reserve(static_cast<std::size_t>(std::max(points, 0)));
  for (int i = 0; i < points; ++i) ks.push_back(kPi * (i + 1) / (points + 1));
  return ks;
}

std::vector<double> detuning_grid(const DetuningSweep& sweep) {
  if (sweep.delta_points == 1) return {sweep.delta_min};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max(sweep.delta_points, 0)));
  for (int i = 0; i < sweep.delta_points; ++i) {
    const double t = static_cast<double>(i) / (sweep.delta_points - 1);
    out.push_back(std::lerp(sweep.delta_min, sweep.delta_max, t));
  }
  return out;
}

double sample_energy(const Scenario& s, int direction, double k) {
  return ring_dispersion(s.ring, s.band, direction * k);
}

Device sample_device(const Scenario& s, double sweep_value, int direction) {
  Device device{s.ring, s.left, s.right, s.atom};
  if (const auto* d = std::get_if<DetuningSweep>(&s.sweep)) {
    device.atom->omega_a = sample_energy(s, direction, d->k) - sweep_value;
  }
  return device;
}

TransmissionCurve sweep_momentum(const Scenario& s) {
  const auto* sweep = std::get_if<MomentumSweep>(&s.sweep);
  if (!sweep) throw ValidationError("sweep_momentum needs a momentum sweep");
  const Device device = s.device();
  const auto ks = momentum_grid(sweep->k_points);

  TransmissionCurve curve;
  curve.samples.resize(ks.size());
  parallel_for(ks.size(), [&](std::size_t i) {
    CurveSample& out = curve.samples[i];
    out.sweep_value = ks[i];
    out.energy_plus = sample_energy(s, +1, ks[i]);
    out.energy_minus = sample_energy(s, -1, ks[i]);
    out.propagating_plus = propagates(device, out.energy_plus);
    out.propagating_minus = propagates(device, out.energy_minus);
    out.t_plus = transmission(device, out.energy_plus, s.solver);
    out.t_minus = transmission(device, out.energy_minus, s.solver);
  });
  return curve;
}

TransmissionCurve sweep_detuning(const Scenario& s) {
  const auto* sweep = std::get_if<DetuningSweep>(&s.sweep);
  if (!sweep) throw ValidationError("sweep_detuning needs a detuning sweep");
  s.validate();
  const auto deltas = detuning_grid(*sweep);
  const double e_plus = sample_energy(s, +1, sweep->k);
  const double e_minus = sample_energy(s, -1, sweep->k);

  TransmissionCurve curve;
  curve.samples.resize(deltas.size());
  parallel_for(deltas.size(), [&](std::size_t i) {
    CurveSample& out = curve.samples[i];
    out.sweep_value = deltas[i];
    out.energy_plus = e_plus;
    out.energy_minus = e_minus;
    const Device plus = sample_device(s, deltas[i], +1);
    const Device minus = sample_device(s, deltas[i], -1);
    out.propagating_plus = propagates(plus, e_plus);
    out.propagating_minus = propagates(minus, e_minus);
    out.t_plus = transmission(plus, e_plus, s.solver);
    out.t_minus = transmission(minus, e_minus, s.solver);
  });
  return curve;
}

TransmissionCurve run_sweep(const Scenario& s) {
  if (std::holds_alternative<MomentumSweep>(s.sweep)) return sweep_momentum(s);
  if (std::holds_alternative<DetuningSweep>(s.sweep)) return sweep_detuning(s);
  throw ValidationError("a band-plot scenario has no transmission curve");
}

NonreciprocitySummary nonreciprocity(const TransmissionCurve& curve) {
  NonreciprocitySummary out;
  out.per_sample.reserve(curve.samples.size());
  for (std::size_t i = 0; i < curve.samples.size(); ++i) {
    const double nr = curve.samples[i].nr();
    out.per_sample.push_back(nr);
    if (std::abs(nr) > out.max_abs) {
      out.max_abs = std::abs(nr);
      out.argmax = curve.samples[i].sweep_value;
      out.argmax_index = i;
    }
  }
  if (out.max_abs == 0.0 && !curve.samples.empty()) out.argmax = curve.samples[0].sweep_value;
  return out;
}

std::vector<BandRow> band_table(const Scenario& s) {
  const auto* plot = std::get_if<BandPlot>(&s.sweep);
  const int points = plot ? plot->k_points : 601;
  const auto upper = dispersion_table(s.ring, BandId::Upper, points);
  const auto lower = dispersion_table(s.ring, BandId::Lower, points);
  std::vector<BandRow> rows;
  rows.reserve(upper.size());
  for (std::size_t i = 0; i < upper.size(); ++i) {
    rows.push_back({upper[i].k, upper[i].energy, lower[i].energy});
  }
  return rows;
}

// Presets. The published figures use V = 20, xi = 1 (V = 10, xi = 3 for the
// band diagram), kappa = 3 with the atom. The atom-free figures and the atom
// coupling gamma carry no published value; kappa = gamma = xi here.

namespace {

Scenario momentum_scenario(std::string label, int n, BandId band, int right_site) {
  Scenario s;
  s.label = std::move(label);
  s.ring = RingSpec{n, 0.0, 20.0, 1.0};
  s.band = band;
  s.left = default_lead(s.ring, band, 0, 1.0);
  s.right = default_lead(s.ring, band, right_site, 1.0);
  s.sweep = MomentumSweep{};
  return s;
}

Scenario detuning_scenario(std::string label, int n, int atom_site, int right_site,
                           double k) {
  Scenario s;
  s.label = std::move(label);
  s.ring = RingSpec{n, 0.0, 20.0, 1.0};
  s.band = BandId::Upper;
  s.left = default_lead(s.ring, s.band, 0, 3.0);
  s.right = default_lead(s.ring, s.band, right_site, 3.0);
  s.atom = AtomSpec{ring_dispersion(s.ring, s.band, k), 1.0, atom_site};
  s.sweep = DetuningSweep{k, -10.0 * s.ring.xi, 10.0 * s.ring.xi, 801};
  return s;
}

Scenario fig5(char panel, int n) {
  if (n < 3 || n % 2 == 0) throw ValidationError("fig5 presets need an odd N >= 3");
  const int mid = (n - 1) / 2;
  const double k = (n - 1) * kPi / n;
  const std::string label = std::string("fig5") + panel + "-n" + std::to_string(n);
  switch (panel) {
    case 'a':
      return detuning_scenario(label, n, mid, mid, k);
    case 'b':
      return detuning_scenario(label, n, 1, mid, k);
    case 'c':
      return detuning_scenario(label, n, mid, mid + 1, k);
  }
  throw ValidationError("unknown fig5 panel");
}

}  // namespace

Scenario preset(std::string_view name) {
  if (name == "fig2bands") {
    Scenario s;
    s.label = "fig2bands";
    s.ring = RingSpec{7, 0.0, 10.0, 3.0};
    s.left = default_lead(s.ring, BandId::Upper, 0);
    s.right = default_lead(s.ring, BandId::Upper, 3);
    s.sweep = BandPlot{};
    return s;
  }
  if (name == "fig3a1") return momentum_scenario("fig3a1", 3, BandId::Upper, 1);
  if (name == "fig3a2") return momentum_scenario("fig3a2", 5, BandId::Upper, 2);
  if (name == "fig3a3") return momentum_scenario("fig3a3", 7, BandId::Upper, 3);
  if (name == "fig3b1") return momentum_scenario("fig3b1", 4, BandId::Upper, 2);
  if (name == "fig3b2") return momentum_scenario("fig3b2", 6, BandId::Upper, 3);
  if (name == "fig3b3") return momentum_scenario("fig3b3", 6, BandId::Upper, 2);
  if (name == "fig4a") return momentum_scenario("fig4a", 3, BandId::Lower, 1);
  if (name == "fig4b") return momentum_scenario("fig4b", 4, BandId::Lower, 2);
  if (name == "fig6") return detuning_scenario("fig6", 6, 2, 3, 4.0 * kPi / 6.0);
  if (name == "fig6inset") return detuning_scenario("fig6inset", 6, 3, 3, 4.0 * kPi / 6.0);

  if (name.size() >= 5 && name.substr(0, 4) == "fig5" &&
      (name[4] == 'a' || name[4] == 'b' || name[4] == 'c')) {
    const char panel = name[4];
    if (name.size() == 5) {
      Scenario s = fig5(panel, 7);
      s.label = std::string(name);
      return s;
    }
    const auto rest = name.substr(5);
    int n = 0;
    if (rest.size() > 2 && rest.substr(0, 2) == "-n") {
      const auto digits = rest.substr(2);
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec == std::errc() && ptr == digits.data() + digits.size()) return fig5(panel, n);
    }
  }
  throw ValidationError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string> preset_names() {
  return {"fig2bands", "fig3a1", "fig3a2", "fig3a3", "fig3b1", "fig3b2", "fig3b3",
          "fig4a",     "fig4b",  "fig5a",  "fig5b",  "fig5c",  "fig6",   "fig6inset"};
}

}  // namespace mobius
