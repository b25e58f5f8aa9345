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

#include "mobius/config.hpp"

#include "mobius/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

namespace mobius {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string fmt_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

bool parse_plain(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size() && std::isfinite(out);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry, std::less<>>;

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>>& schema() {
  static const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> s = {
      {"ring", {"N", "epsilon", "V", "xi"}},
      {"lead.left", {"omega", "zeta", "kappa", "attach", "self_energy_convention"}},
      {"lead.right", {"omega", "zeta", "kappa", "attach", "self_energy_convention"}},
      {"atom", {"omega_a", "gamma", "n"}},
      {"sweep", {"band", "kind", "k_points", "k", "delta_min", "delta_max", "delta_points"}},
      {"run", {"label", "eta", "cross_check", "seed", "out"}},
  };
  return s;
}

class Document {
 public:
  explicit Document(std::string_view text) {
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      ++line_no;
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      line = trim(line);
      if (line.empty()) continue;

      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "unterminated section header");
        current = std::string(trim(line.substr(1, line.size() - 2)));
        if (!schema().contains(current)) fail(line_no, "unknown section [" + current + "]");
        if (!seen_sections_.insert(current).second) {
          fail(line_no, "section [" + current + "] appears twice");
        }
        sections_[current];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
      const std::string key(trim(line.substr(0, eq)));
      const std::string value(trim(line.substr(eq + 1)));
      if (current.empty()) fail(line_no, "key '" + key + "' outside of any section");
      if (!schema().at(current).contains(key)) {
        fail(line_no, "unknown key '" + key + "' in [" + current + "]");
      }
      if (value.empty()) fail(line_no, "empty value for '" + key + "'");
      auto& section = sections_[current];
      if (section.contains(key)) fail(line_no, "repeated key '" + key + "' in [" + current + "]");
      section.emplace(key, Entry{value, line_no});
    }
  }

  bool has_section(std::string_view name) const { return sections_.contains(name); }

  const Entry* find(std::string_view section, std::string_view key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  std::optional<double> real(std::string_view section, std::string_view key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    try {
      return parse_real(e->value);
    } catch (const ValidationError& err) {
      fail(e->line, std::string(section) + "." + std::string(key) + ": " + err.what());
    }
  }

  std::optional<long long> integer(std::string_view section, std::string_view key) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    long long v = 0;
    const auto& s = e->value;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      fail(e->line, std::string(section) + "." + std::string(key) + ": expected an integer, got '" +
                        s + "'");
    }
    return v;
  }

  int small_int(std::string_view section, std::string_view key, int fallback) const {
    const auto v = integer(section, key);
    if (!v) return fallback;
    if (*v < -1'000'000'000LL || *v > 1'000'000'000LL) {
      fail(find(section, key)->line, std::string(section) + "." + std::string(key) + " is out of range");
    }
    return static_cast<int>(*v);
  }

  [[noreturn]] static void fail(int line, const std::string& message) {
    throw ValidationError("line " + std::to_string(line) + ": " + message);
  }

 private:
  std::map<std::string, Section, std::less<>> sections_;
  std::set<std::string> seen_sections_;
};

SiteIndex parse_site(const Entry& e, std::string_view field) {
  std::string_view s = e.value;
  Layer layer;
  if (s.starts_with("a")) {
    layer = Layer::UpperA;
  } else if (s.starts_with("b")) {
    layer = Layer::LowerB;
  } else {
    Document::fail(e.line, std::string(field) + ": expected a site like a_3, got '" + e.value + "'");
  }
  s.remove_prefix(1);
  if (s.starts_with("_")) s.remove_prefix(1);
  int j = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), j);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    Document::fail(e.line, std::string(field) + ": expected a site like a_3, got '" + e.value + "'");
  }
  return {layer, j};
}

SelfEnergyConvention parse_convention(const Entry& e) {
  if (e.value == "surface") return SelfEnergyConvention::Surface;
  if (e.value == "literal") return SelfEnergyConvention::Literal;
  Document::fail(e.line, "self_energy_convention must be 'surface' or 'literal'");
}

bool parse_bool(const Entry& e) {
  if (e.value == "true" || e.value == "1") return true;
  if (e.value == "false" || e.value == "0") return false;
  Document::fail(e.line, "expected true or false, got '" + e.value + "'");
}

LeadSpec parse_lead(const Document& doc, std::string_view section, const RingSpec& ring,
                    BandId band, int default_site) {
  LeadSpec lead = default_lead(ring, band, default_site);
  if (auto v = doc.real(section, "omega")) lead.omega = *v;
  if (auto v = doc.real(section, "zeta")) lead.zeta = *v;
  if (auto v = doc.real(section, "kappa")) lead.kappa = *v;
  if (const Entry* e = doc.find(section, "attach")) {
    lead.attach = parse_site(*e, std::string(section) + ".attach");
  }
  if (const Entry* e = doc.find(section, "self_energy_convention")) {
    lead.convention = parse_convention(*e);
  }
  return lead;
}

}  // namespace

std::string_view to_string(SelfEnergyConvention convention) {
  return convention == SelfEnergyConvention::Surface ? "surface" : "literal";
}

double parse_real(std::string_view text) {
  text = trim(text);
  double value = 0.0;
  if (parse_plain(text, value)) return value;

  // a*pi/b and its shorthands.
  std::string_view numerator = text;
  double denominator = 1.0;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    numerator = trim(text.substr(0, slash));
    if (!parse_plain(trim(text.substr(slash + 1)), denominator) || denominator == 0.0) {
      throw ValidationError("cannot parse number '" + std::string(text) + "'");
    }
  }
  double factor = 1.0;
  bool negative = false;
  if (numerator.starts_with("-")) {
    negative = true;
    numerator.remove_prefix(1);
  }
  if (numerator.ends_with("pi")) {
    numerator.remove_suffix(2);
    numerator = trim(numerator);
    if (!numerator.empty()) {
      if (!numerator.ends_with("*")) {
        throw ValidationError("cannot parse number '" + std::string(text) + "'");
      }
      numerator.remove_suffix(1);
      if (!parse_plain(trim(numerator), factor)) {
        throw ValidationError("cannot parse number '" + std::string(text) + "'");
      }
    }
    value = factor * std::numbers::pi / denominator;
    return negative ? -value : value;
  }
  throw ValidationError("cannot parse number '" + std::string(text) + "'");
}

ParsedConfig parse_config(std::string_view text) {
  const Document doc(text);
  ParsedConfig out;
  Scenario& s = out.scenario;

  if (!doc.has_section("ring")) throw ValidationError("missing [ring] section");
  for (const char* key : {"N", "V", "xi"}) {
    if (!doc.find("ring", key)) throw ValidationError(std::string("ring.") + key + " is required");
  }
  s.ring.N = doc.small_int("ring", "N", 0);
  s.ring.epsilon = doc.real("ring", "epsilon").value_or(0.0);
  s.ring.V = *doc.real("ring", "V");
  s.ring.xi = *doc.real("ring", "xi");
  s.ring.validate();

  if (const Entry* e = doc.find("sweep", "band")) {
    if (e->value == "upper") {
      s.band = BandId::Upper;
    } else if (e->value == "lower") {
      s.band = BandId::Lower;
    } else {
      Document::fail(e->line, "sweep.band must be 'upper' or 'lower'");
    }
  }

  s.left = parse_lead(doc, "lead.left", s.ring, s.band, 0);
  s.right = parse_lead(doc, "lead.right", s.ring, s.band, s.ring.N / 2);

  if (doc.has_section("atom")) {
    AtomSpec atom;
    if (!doc.find("atom", "n")) throw ValidationError("atom.n is required in [atom]");
    atom.n = doc.small_int("atom", "n", 0);
    atom.gamma = doc.real("atom", "gamma").value_or(1.0);
    atom.omega_a = doc.real("atom", "omega_a").value_or(s.left.omega);
    s.atom = atom;
  }

  std::string kind = "momentum";
  if (const Entry* e = doc.find("sweep", "kind")) kind = e->value;
  const int k_points = doc.small_int("sweep", "k_points", 601);
  if (kind == "momentum") {
    s.sweep = MomentumSweep{k_points};
  } else if (kind == "bands") {
    s.sweep = BandPlot{k_points};
  } else if (kind == "detuning") {
    DetuningSweep d;
    const auto k = doc.real("sweep", "k");
    if (!k) throw ValidationError("sweep.k is required for a detuning sweep");
    d.k = *k;
    d.delta_min = doc.real("sweep", "delta_min").value_or(-10.0 * std::abs(s.ring.xi));
    d.delta_max = doc.real("sweep", "delta_max").value_or(10.0 * std::abs(s.ring.xi));
    d.delta_points = doc.small_int("sweep", "delta_points", 801);
    s.sweep = d;
  } else {
    Document::fail(doc.find("sweep", "kind")->line,
                   "sweep.kind must be 'momentum', 'detuning' or 'bands'");
  }

  if (const Entry* e = doc.find("run", "label")) s.label = e->value;
  if (auto v = doc.real("run", "eta")) s.solver.eta = *v;
  if (const Entry* e = doc.find("run", "cross_check")) out.run.cross_check = parse_bool(*e);
  if (auto v = doc.integer("run", "seed")) {
    if (*v < 0) Document::fail(doc.find("run", "seed")->line, "run.seed must be >= 0");
    out.run.seed = static_cast<std::uint64_t>(*v);
  }
  if (const Entry* e = doc.find("run", "out")) out.run.out_dir = e->value;

  s.validate();
  return out;
}

std::string serialize_config(const Scenario& s, const RunConfig& run) {
  std::ostringstream os;
  os << "[ring]\n"
     << "N = " << s.ring.N << "\n"
     << "epsilon = " << fmt_real(s.ring.epsilon) << "\n"
     << "V = " << fmt_real(s.ring.V) << "\n"
     << "xi = " << fmt_real(s.ring.xi) << "\n";
  const auto lead = [&os](const char* name, const LeadSpec& l) {
    os << "\n[" << name << "]\n"
       << "omega = " << fmt_real(l.omega) << "\n"
       << "zeta = " << fmt_real(l.zeta) << "\n"
       << "kappa = " << fmt_real(l.kappa) << "\n"
       << "attach = " << l.attach.label() << "\n"
       << "self_energy_convention = " << to_string(l.convention) << "\n";
  };
  lead("lead.left", s.left);
  lead("lead.right", s.right);
  if (s.atom) {
    os << "\n[atom]\n"
       << "omega_a = " << fmt_real(s.atom->omega_a) << "\n"
       << "gamma = " << fmt_real(s.atom->gamma) << "\n"
       << "n = " << s.atom->n << "\n";
  }
  os << "\n[sweep]\nband = " << to_string(s.band) << "\n";
  if (const auto* m = std::get_if<MomentumSweep>(&s.sweep)) {
    os << "kind = momentum\nk_points = " << m->k_points << "\n";
  } else if (const auto* d = std::get_if<DetuningSweep>(&s.sweep)) {
    os << "kind = detuning\n"
       << "k = " << fmt_real(d->k) << "\n"
       << "delta_min = " << fmt_real(d->delta_min) << "\n"
       << "delta_max = " << fmt_real(d->delta_max) << "\n"
       << "delta_points = " << d->delta_points << "\n";
  } else if (const auto* b = std::get_if<BandPlot>(&s.sweep)) {
    os << "kind = bands\nk_points = " << b->k_points << "\n";
  }
  os << "\n[run]\n";
  if (!s.label.empty()) os << "label = " << s.label << "\n";
  if (s.solver.eta) os << "eta = " << fmt_real(*s.solver.eta) << "\n";
  os << "cross_check = " << (run.cross_check ? "true" : "false") << "\n"
     << "seed = " << run.seed << "\n";
  if (!run.out_dir.empty()) os << "out = " << run.out_dir.string() << "\n";
  return os.str();
}

void apply_overrides(Scenario& s, const RunConfig& run) {
  for (LeadSpec* lead : {&s.left, &s.right}) {
    if (run.convention) lead->convention = *run.convention;
    if (run.omega) lead->omega = *run.omega;
    if (run.zeta) lead->zeta = *run.zeta;
  }
  if (run.eta) s.solver.eta = *run.eta;
  if (run.k_points) {
    if (auto* m = std::get_if<MomentumSweep>(&s.sweep)) m->k_points = *run.k_points;
    if (auto* b = std::get_if<BandPlot>(&s.sweep)) b->k_points = *run.k_points;
  }
  if (run.delta_points) {
    if (auto* d = std::get_if<DetuningSweep>(&s.sweep)) d->delta_points = *run.delta_points;
  }
  s.validate();
}

}  // namespace mobius
