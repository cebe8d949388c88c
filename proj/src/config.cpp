// SPDX-License-Identifier: Apache-2.0
//
// mmshare: spectrum sharing analysis for mmWave cellular networks
// Copyright (C) 2026 The mmshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmshare/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "mmshare/units.hpp"

namespace mmshare {

namespace {

enum class Kind { Plain, Ratio, Power, Density, Length, Angle, Frequency, Decibel };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Plain: return "a plain number";
    case Kind::Ratio: return "a ratio (linear or dB)";
    case Kind::Power: return "a power (W, mW, dBW, dB or dBm)";
    case Kind::Density: return "a density (/m2 or /km2)";
    case Kind::Length: return "a length (m or km)";
    case Kind::Angle: return "an angle (rad or deg)";
    case Kind::Frequency: return "a frequency (Hz, kHz, MHz or GHz)";
    case Kind::Decibel: return "a level in dB";
  }
  return "a number";
}

// Converts a value with an optional unit suffix to SI. Returns false when the
// unit does not fit the kind.
bool convert(double v, const std::string& unit, Kind kind, double& out) {
  if (unit.empty()) {
    out = v;
    return true;
  }
  switch (kind) {
    case Kind::Plain:
      return false;
    case Kind::Ratio:
      if (unit == "dB") return out = from_db(v), true;
      return false;
    case Kind::Power:
      if (unit == "W") return out = v, true;
      if (unit == "mW") return out = 1e-3 * v, true;
      if (unit == "dB" || unit == "dBW") return out = from_db(v), true;
      if (unit == "dBm") return out = from_dbm(v), true;
      return false;
    case Kind::Density:
      if (unit == "/m2" || unit == "/m^2") return out = v, true;
      if (unit == "/km2" || unit == "/km^2") return out = per_km2(v), true;
      return false;
    case Kind::Length:
      if (unit == "m") return out = v, true;
      if (unit == "km") return out = 1e3 * v, true;
      return false;
    case Kind::Angle:
      if (unit == "rad") return out = v, true;
      if (unit == "deg") return out = v * kPi / 180.0, true;
      return false;
    case Kind::Frequency:
      if (unit == "Hz") return out = v, true;
      if (unit == "kHz") return out = 1e3 * v, true;
      if (unit == "MHz") return out = 1e6 * v, true;
      if (unit == "GHz") return out = 1e9 * v, true;
      return false;
    case Kind::Decibel:
      if (unit == "dB") return out = v, true;
      return false;
  }
  return false;
}

std::string line_of(const YAML::Node& n) {
  const auto m = n.Mark();
  return m.is_null() ? std::string() : "line " + std::to_string(m.line + 1) + ": ";
}

// One mapping in the file. Every key read is remembered so that leftovers
// can be reported as unknown.
class Section {
 public:
  Section(YAML::Node node, std::string path, const std::string& source)
      : node_(std::move(node)), path_(std::move(path)), source_(source) {
    if (node_ && !node_.IsMap()) fail(node_, "expected a mapping");
  }

  bool has(const std::string& key) const { return node_ && at(key); }

  YAML::Node take(const std::string& key) {
    used_.insert(key);
    return node_ ? at(key) : YAML::Node(YAML::NodeType::Undefined);
  }

  Section child(const std::string& key) { return Section(take(key), field(key), source_); }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  [[noreturn]] void fail(const YAML::Node& at, const std::string& msg) const {
    throw ConfigError(source_ + ": " + line_of(at) + (path_.empty() ? "" : path_ + ": ") + msg);
  }
  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) {
    throw ConfigError(source_ + ": " + (node_ ? line_of(at(key)) : std::string()) + field(key) + ": " + msg);
  }

  double quantity(const std::string& key, Kind kind, double fallback) {
    const YAML::Node n = take(key);
    if (!n) return fallback;
    return parse_quantity(n, key, kind);
  }

  double parse_quantity(const YAML::Node& n, const std::string& key, Kind kind) {
    if (!n.IsScalar()) fail_key(key, "expected " + std::string(kind_name(kind)));
    const std::string text = n.Scalar();
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail_key(key, "'" + text + "' is not a number");
    std::string unit(end);
    unit.erase(0, unit.find_first_not_of(" \t"));
    unit.erase(unit.find_last_not_of(" \t") + 1);
    double out = 0.0;
    if (!convert(v, unit, kind, out)) {
      fail_key(key, "unit '" + unit + "' does not fit " + kind_name(kind));
    }
    if (!std::isfinite(out)) fail_key(key, "value must be finite");
    return out;
  }

  std::vector<double> quantities(const std::string& key, Kind kind, std::vector<double> fallback) {
    const YAML::Node n = take(key);
    if (!n) return fallback;
    if (!n.IsSequence()) fail_key(key, "expected a list");
    std::vector<double> out;
    for (const auto& item : n) out.push_back(parse_quantity(item, key, kind));
    return out;
  }

  template <class T>
  T scalar(const std::string& key, T fallback) {
    const YAML::Node n = take(key);
    if (!n) return fallback;
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail_key(key, "cannot read '" + (n.IsScalar() ? n.Scalar() : std::string("<node>")) + "'");
    }
  }

  std::string text(const std::string& key, const std::string& fallback) { return scalar<std::string>(key, fallback); }

  void finish() const {
    if (!node_) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (!used_.count(key)) {
        throw ConfigError(source_ + ": " + line_of(kv.first) + field(key) + ": unknown key");
      }
    }
  }

 private:
  // Const lookup; the mutable operator[] would insert missing keys.
  YAML::Node at(const std::string& key) const {
    const YAML::Node& n = node_;
    return n[key];
  }

  YAML::Node node_;
  std::string path_;
  const std::string& source_;
  std::set<std::string> used_;
};

// Wraps library errors thrown while building a field.
template <class F>
auto guarded(Section& sec, const std::string& key, F f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    sec.fail_key(key, e.what());
  }
}

void read_channel(Section sec, ChannelModel& ch) {
  const std::string blockage = sec.text("blockage", "exponential");
  const double beta = sec.quantity("beta", Kind::Length, 150.0);
  if (blockage == "exponential") {
    ch.blockage = guarded(sec, "beta", [&] { return Blockage::exponential(beta); });
  } else if (blockage == "none") {
    ch.blockage = Blockage::none();
  } else {
    sec.fail_key("blockage", "expected 'exponential' or 'none'");
  }
  Section alpha = sec.child("alpha");
  ch.alpha[0] = alpha.quantity("los", Kind::Plain, ch.alpha[0]);
  ch.alpha[1] = alpha.quantity("nlos", Kind::Plain, ch.alpha[1]);
  alpha.finish();
  Section gain = sec.child("gain");
  ch.gain[0] = gain.quantity("los", Kind::Ratio, ch.gain[0]);
  ch.gain[1] = gain.quantity("nlos", Kind::Ratio, ch.gain[1]);
  gain.finish();
  guarded(sec, "alpha", [&] {
    ch.validate();
    return 0;
  });
}

AntennaPattern antenna_from(Section& parent, const std::string& key, const AntennaPattern& fallback,
                            const std::string& source) {
  if (!parent.has(key)) return fallback;
  const YAML::Node n = parent.take(key);
  if (n.IsScalar()) {
    if (n.Scalar() == "omni") return AntennaPattern::omni();
    parent.fail_key(key, "expected 'omni' or a mapping");
  }
  Section a(n, parent.field(key), source);
  return guarded(parent, key, [&] {
    if (a.has("ula")) {
      Section u = a.child("ula");
      const int elements = u.scalar<int>("elements", 1);
      const double kappa = u.quantity("kappa", Kind::Plain, 1.0);
      u.finish();
      a.finish();
      return ula_pattern(elements, kappa);
    }
    const double g1 = a.quantity("main_gain", Kind::Ratio, 1.0);
    const double theta = a.quantity("beamwidth", Kind::Angle, kTwoPi);
    if (a.has("side_gain")) {
      AntennaPattern p{g1, a.quantity("side_gain", Kind::Ratio, 1.0), theta};
      a.finish();
      p.validate();
      return p;
    }
    a.finish();
    return AntennaPattern::sectored(g1, theta);
  });
}

OperatorConfig read_operator(Section sec, const OperatorConfig& fallback, bool primary,
                             const std::string& source) {
  OperatorConfig op = fallback;
  op.bs_density = sec.quantity("bs_density", Kind::Density, op.bs_density);
  op.user_density = sec.quantity("user_density", Kind::Density, op.user_density);
  op.noise_power = sec.quantity("noise", Kind::Power, op.noise_power);
  const bool has_power = sec.has("power");
  const bool has_cap = sec.has("interference_cap");
  if (has_power && has_cap) sec.fail_key("power", "give either power or interference_cap, not both");
  if (has_cap) {
    if (primary) sec.fail_key("interference_cap", "the primary operator transmits at fixed power");
    op.power = InterferenceCap{sec.quantity("interference_cap", Kind::Power, 0.0)};
  } else if (has_power) {
    op.power = FixedPower{sec.quantity("power", Kind::Power, 0.0)};
  }
  op.antenna = antenna_from(sec, "antenna", op.antenna, source);
  sec.finish();
  return op;
}

DbGrid read_grid(Section sec, DbGrid g) {
  g.lo_db = sec.quantity("lo", Kind::Decibel, g.lo_db);
  g.hi_db = sec.quantity("hi", Kind::Decibel, g.hi_db);
  g.points = sec.scalar<std::size_t>("points", g.points);
  sec.finish();
  return g;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit_antenna(YAML::Emitter& out, const AntennaPattern& a) {
  out << YAML::BeginMap << YAML::Key << "main_gain" << YAML::Value << num(a.main_gain) << YAML::Key
      << "side_gain" << YAML::Value << num(a.side_gain) << YAML::Key << "beamwidth" << YAML::Value
      << num(a.beamwidth) << YAML::EndMap;
}

void emit_operator(YAML::Emitter& out, const OperatorConfig& op) {
  out << YAML::BeginMap;
  out << YAML::Key << "bs_density" << YAML::Value << num(op.bs_density);
  out << YAML::Key << "user_density" << YAML::Value << num(op.user_density);
  if (const auto* cap = std::get_if<InterferenceCap>(&op.power)) {
    out << YAML::Key << "interference_cap" << YAML::Value << num(cap->xi);
  } else {
    out << YAML::Key << "power" << YAML::Value << num(std::get<FixedPower>(op.power).watts);
  }
  out << YAML::Key << "noise" << YAML::Value << num(op.noise_power);
  out << YAML::Key << "antenna" << YAML::Value;
  emit_antenna(out, op.antenna);
  out << YAML::EndMap;
}

void emit_grid(YAML::Emitter& out, const DbGrid& g) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "lo" << YAML::Value << num(g.lo_db) << YAML::Key << "hi"
      << YAML::Value << num(g.hi_db) << YAML::Key << "points" << YAML::Value << g.points << YAML::EndMap;
}

void emit_list(YAML::Emitter& out, const std::vector<double>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : v) out << num(x);
  out << YAML::EndSeq;
}

std::string emit(const RunConfig& c, bool run_fields) {
  const Scenario& s = c.scenario;
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "mode" << YAML::Value << to_string(c.mode);
  if (run_fields) {
    out << YAML::Key << "seed" << YAML::Value << s.seed;
    out << YAML::Key << "threads" << YAML::Value << (c.threads > 0 ? std::to_string(c.threads) : "auto");
    out << YAML::Key << "format" << YAML::Value << to_string(c.format);
  }
  out << YAML::Key << "realizations" << YAML::Value << s.n_realizations;

  out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
  const bool none = !s.channel.blockage.is_exponential();
  if (none && s.channel.blockage.name() != "none") {
    throw ConfigError("canonical config: a custom blockage function has no text form");
  }
  out << YAML::Key << "blockage" << YAML::Value << (none ? "none" : "exponential");
  if (!none) out << YAML::Key << "beta" << YAML::Value << num(s.channel.blockage.decay_length());
  out << YAML::Key << "alpha" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "los" << YAML::Value
      << num(s.channel.alpha[0]) << YAML::Key << "nlos" << YAML::Value << num(s.channel.alpha[1]) << YAML::EndMap;
  out << YAML::Key << "gain" << YAML::Value << YAML::Flow << YAML::BeginMap << YAML::Key << "los" << YAML::Value
      << num(s.channel.gain[0]) << YAML::Key << "nlos" << YAML::Value << num(s.channel.gain[1]) << YAML::EndMap;
  out << YAML::Key << "carrier_frequency" << YAML::Value << num(c.carrier_frequency);
  out << YAML::EndMap;

  out << YAML::Key << "primary" << YAML::Value;
  emit_operator(out, s.primary);
  out << YAML::Key << "secondary" << YAML::Value;
  emit_operator(out, s.secondary);

  auto radius = [](double r) { return r > 0.0 ? num(r) : std::string("auto"); };
  out << YAML::Key << "geometry" << YAML::Value << YAML::BeginMap << YAML::Key << "window_radius" << YAML::Value
      << radius(s.window_radius) << YAML::Key << "guard_radius" << YAML::Value << radius(s.guard_radius)
      << YAML::EndMap;

  out << YAML::Key << "rate" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "bandwidth" << YAML::Value << num(c.rate.bandwidth);
  out << YAML::Key << "log_base" << YAML::Value << (c.rate.log_base == LogBase::Binary ? "2" : "e");
  out << YAML::Key << "coverage_level" << YAML::Value << num(c.rate.coverage_level);
  out << YAML::Key << "sinr_tolerance" << YAML::Value << num(c.rate.sinr_tolerance);
  out << YAML::EndMap;

  out << YAML::Key << "quadrature" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "rel" << YAML::Value << num(c.quadrature.rel);
  out << YAML::Key << "outer_rel" << YAML::Value << num(c.quadrature.outer_rel);
  out << YAML::Key << "outer_abs" << YAML::Value << num(c.quadrature.outer_abs);
  out << YAML::Key << "max_subdivisions" << YAML::Value << c.quadrature.max_subdivisions;
  out << YAML::EndMap;

  const auto& p = c.pricing;
  out << YAML::Key << "pricing" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "m_p" << YAML::Value << num(p.m_p) << YAML::Key << "m_s" << YAML::Value << num(p.m_s);
  out << YAML::Key << "pi_p" << YAML::Value << num(p.pi_p) << YAML::Key << "pi_sc" << YAML::Value << num(p.pi_sc);
  out << YAML::Key << "pi_sp" << YAML::Value << num(p.pi_sp);
  out << YAML::EndMap;

  out << YAML::Key << "thresholds" << YAML::Value;
  emit_grid(out, c.thresholds);
  out << YAML::Key << "xi_grid" << YAML::Value;
  emit_grid(out, c.xi_grid);

  out << YAML::Key << "validate" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tolerance" << YAML::Value << num(c.validate_run.tolerance);
  out << YAML::Key << "secondary_densities" << YAML::Value;
  emit_list(out, c.validate_run.secondary_densities);
  out << YAML::EndMap;

  out << YAML::Key << "compare_modes" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lambda_a" << YAML::Value << num(c.compare.lambda_a);
  out << YAML::Key << "lambda_b" << YAML::Value;
  emit_list(out, c.compare.lambda_b);
  out << YAML::EndMap;

  out << YAML::Key << "sweep_density" << YAML::Value << YAML::BeginMap << YAML::Key << "densities" << YAML::Value;
  emit_list(out, c.densities);
  out << YAML::EndMap;

  out << YAML::Key << "sweep_beamwidth" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "elements" << YAML::Value << YAML::Flow << YAML::BeginSeq;
  for (int n : c.beam.elements) out << n;
  out << YAML::EndSeq;
  out << YAML::Key << "kappa" << YAML::Value << num(c.beam.kappa);
  out << YAML::Key << "both_operators" << YAML::Value << c.beam.both_operators;
  out << YAML::EndMap;

  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "mc") return Mode::MonteCarlo;
  if (name == "analytic") return Mode::Analytic;
  if (name == "validate") return Mode::Validate;
  if (name == "sweep-xi") return Mode::SweepXi;
  if (name == "compare-modes") return Mode::CompareModes;
  if (name == "sweep-density") return Mode::SweepDensity;
  if (name == "sweep-beamwidth") return Mode::SweepBeamwidth;
  throw ConfigError("unknown mode '" + name + "'");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::MonteCarlo: return "mc";
    case Mode::Analytic: return "analytic";
    case Mode::Validate: return "validate";
    case Mode::SweepXi: return "sweep-xi";
    case Mode::CompareModes: return "compare-modes";
    case Mode::SweepDensity: return "sweep-density";
    case Mode::SweepBeamwidth: return "sweep-beamwidth";
  }
  return "?";
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw ConfigError("unknown format '" + name + "' (csv or json)");
}

std::string to_string(Format f) { return f == Format::Csv ? "csv" : "json"; }

std::vector<double> DbGrid::linear() const { return db_grid(lo_db, hi_db, points); }

void RunConfig::validate() const {
  auto invariant = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  Scenario s = scenario;
  apply_default_geometry(s);
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  try {
    LinearPricing check(pricing);
    (void)check;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("pricing: ") + e.what());
  }
  invariant(rate.bandwidth > 0.0, "rate.bandwidth must be positive");
  invariant(rate.coverage_level > 0.0 && rate.coverage_level < 1.0, "rate.coverage_level must lie in (0, 1)");
  invariant(rate.sinr_tolerance > 0.0, "rate.sinr_tolerance must be positive");
  invariant(quadrature.rel > 0.0 && quadrature.outer_rel > 0.0 && quadrature.outer_abs >= 0.0,
            "quadrature: tolerances must be positive");
  invariant(quadrature.max_subdivisions >= 1, "quadrature.max_subdivisions must be >= 1");
  invariant(carrier_frequency > 0.0, "channel.carrier_frequency must be positive");
  auto grid = [&](const DbGrid& g, const char* name) {
    invariant(g.points >= 2, std::string(name) + ".points must be >= 2");
    invariant(g.hi_db > g.lo_db, std::string(name) + ": hi must exceed lo");
  };
  auto positive = [&](const std::vector<double>& v, const std::string& name) {
    invariant(!v.empty(), name + " must not be empty");
    for (double x : v) invariant(x > 0.0, name + ": densities must be positive");
  };
  invariant(threads >= 0, "threads must be >= 0 (0 = auto)");
  switch (mode) {
    case Mode::MonteCarlo:
    case Mode::Analytic:
      grid(thresholds, "thresholds");
      break;
    case Mode::Validate:
      grid(thresholds, "thresholds");
      invariant(validate_run.tolerance > 0.0, "validate.tolerance must be positive");
      if (!validate_run.secondary_densities.empty()) {
        positive(validate_run.secondary_densities, "validate.secondary_densities");
      }
      break;
    case Mode::SweepXi:
      grid(xi_grid, "xi_grid");
      invariant(scenario.restricted(), "sweep-xi needs secondary.interference_cap");
      break;
    case Mode::CompareModes:
      grid(xi_grid, "xi_grid");
      invariant(scenario.restricted(), "compare-modes needs secondary.interference_cap");
      invariant(compare.lambda_a > 0.0, "compare_modes.lambda_a must be positive");
      positive(compare.lambda_b, "compare_modes.lambda_b");
      break;
    case Mode::SweepDensity:
      positive(densities, "sweep_density.densities");
      break;
    case Mode::SweepBeamwidth:
      invariant(!beam.elements.empty(), "sweep_beamwidth.elements must not be empty");
      for (int n : beam.elements) invariant(n >= 1, "sweep_beamwidth.elements must be >= 1");
      invariant(beam.kappa > 0.0 && beam.kappa <= 1.0, "sweep_beamwidth.kappa must lie in (0, 1]");
      break;
  }
}

RunConfig default_run_config() {
  RunConfig c;
  c.scenario = baseline_scenario(30.0);
  c.scenario.window_radius = 0.0;
  c.scenario.guard_radius = 0.0;
  return c;
}

RunConfig parse_config(const std::string& yaml_text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ": line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (root.IsNull()) root = YAML::Node(YAML::NodeType::Map);
  RunConfig c = default_run_config();
  Scenario& s = c.scenario;
  Section top(root, "", source);

  if (top.has("mode")) {
    try {
      c.mode = parse_mode(top.text("mode", ""));
    } catch (const ConfigError& e) {
      top.fail_key("mode", e.what());
    }
  }
  s.seed = top.scalar<std::uint64_t>("seed", s.seed);
  s.n_realizations = top.scalar<std::size_t>("realizations", s.n_realizations);
  const std::string threads = top.text("threads", "auto");
  if (threads == "auto") {
    c.threads = 0;
  } else {
    c.threads = top.scalar<int>("threads", 0);
  }
  if (top.has("format")) {
    try {
      c.format = parse_format(top.text("format", "csv"));
    } catch (const ConfigError& e) {
      top.fail_key("format", e.what());
    }
  }

  {
    Section ch = top.child("channel");
    c.carrier_frequency = ch.quantity("carrier_frequency", Kind::Frequency, c.carrier_frequency);
    read_channel(std::move(ch), s.channel);
  }
  if (top.has("primary")) s.primary = read_operator(top.child("primary"), s.primary, true, source);
  if (top.has("secondary")) s.secondary = read_operator(top.child("secondary"), s.secondary, false, source);

  {
    Section g = top.child("geometry");
    auto radius = [&](const std::string& key) {
      if (!g.has(key)) return 0.0;
      const YAML::Node n = g.take(key);
      if (n.IsScalar() && n.Scalar() == "auto") return 0.0;
      return g.parse_quantity(n, key, Kind::Length);
    };
    s.window_radius = radius("window_radius");
    s.guard_radius = radius("guard_radius");
    g.finish();
  }
  {
    Section r = top.child("rate");
    c.rate.bandwidth = r.quantity("bandwidth", Kind::Frequency, c.rate.bandwidth);
    const std::string base = r.text("log_base", "2");
    if (base == "2") {
      c.rate.log_base = LogBase::Binary;
    } else if (base == "e") {
      c.rate.log_base = LogBase::Natural;
    } else {
      r.fail_key("log_base", "expected 2 or e");
    }
    c.rate.coverage_level = r.quantity("coverage_level", Kind::Plain, c.rate.coverage_level);
    c.rate.sinr_tolerance = r.quantity("sinr_tolerance", Kind::Plain, c.rate.sinr_tolerance);
    r.finish();
  }
  {
    Section q = top.child("quadrature");
    c.quadrature.rel = q.quantity("rel", Kind::Plain, c.quadrature.rel);
    c.quadrature.outer_rel = q.quantity("outer_rel", Kind::Plain, c.quadrature.outer_rel);
    c.quadrature.outer_abs = q.quantity("outer_abs", Kind::Plain, c.quadrature.outer_abs);
    c.quadrature.max_subdivisions = q.scalar<std::size_t>("max_subdivisions", c.quadrature.max_subdivisions);
    q.finish();
  }
  {
    Section p = top.child("pricing");
    auto& k = c.pricing;
    k.m_p = p.quantity("m_p", Kind::Plain, k.m_p);
    k.m_s = p.quantity("m_s", Kind::Plain, k.m_s);
    k.pi_p = p.quantity("pi_p", Kind::Plain, k.pi_p);
    k.pi_sc = p.quantity("pi_sc", Kind::Plain, k.pi_sc);
    k.pi_sp = p.quantity("pi_sp", Kind::Plain, k.pi_sp);
    p.finish();
  }
  if (top.has("thresholds")) c.thresholds = read_grid(top.child("thresholds"), c.thresholds);
  if (top.has("xi_grid")) c.xi_grid = read_grid(top.child("xi_grid"), c.xi_grid);
  {
    Section v = top.child("validate");
    c.validate_run.tolerance = v.quantity("tolerance", Kind::Plain, c.validate_run.tolerance);
    c.validate_run.secondary_densities =
        v.quantities("secondary_densities", Kind::Density, c.validate_run.secondary_densities);
    v.finish();
  }
  {
    Section m = top.child("compare_modes");
    c.compare.lambda_a = m.quantity("lambda_a", Kind::Density, c.compare.lambda_a);
    c.compare.lambda_b = m.quantities("lambda_b", Kind::Density, c.compare.lambda_b);
    m.finish();
  }
  {
    Section d = top.child("sweep_density");
    c.densities = d.quantities("densities", Kind::Density, c.densities);
    d.finish();
  }
  {
    Section b = top.child("sweep_beamwidth");
    if (b.has("elements")) {
      const YAML::Node n = b.take("elements");
      if (!n.IsSequence()) b.fail_key("elements", "expected a list");
      c.beam.elements.clear();
      for (const auto& item : n) {
        try {
          c.beam.elements.push_back(item.as<int>());
        } catch (const YAML::Exception&) {
          b.fail_key("elements", "expected integers");
        }
      }
    }
    c.beam.kappa = b.quantity("kappa", Kind::Plain, c.beam.kappa);
    c.beam.both_operators = b.scalar<bool>("both_operators", c.beam.both_operators);
    b.finish();
  }
  top.finish();

  try {
    c.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

std::string canonical_config(const RunConfig& c) { return emit(c, true); }

std::string config_hash(const RunConfig& c) {
  const std::string text = emit(c, false);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mmshare
