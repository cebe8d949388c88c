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

#include "mmshare/harness.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mmshare/analytic.hpp"
#include "mmshare/montecarlo.hpp"
#include "mmshare/units.hpp"

namespace mmshare {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for table names: 30, 62.5.
std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

const char* op_name(mc::Operator op) { return op == mc::Operator::Primary ? "primary" : "secondary"; }

double db_of(double linear) { return linear > 0.0 ? to_db(linear) : -INFINITY; }

Scenario prepared(Scenario s) {
  apply_default_geometry(s);
  s.validate();
  return s;
}

Scenario with_secondary_density(const Scenario& base, double density) {
  Scenario s = base;
  s.secondary.bs_density = density;
  return prepared(s);
}

Table coverage_table(const std::string& name) {
  return Table{name, {"threshold_db", "value", "ci_halfwidth", "operator", "provenance"}, {}};
}

void add_curve(Table& t, const CoverageCurve& c, mc::Operator op) {
  const std::string label = c.provenance_label();
  for (std::size_t i = 0; i < c.size(); ++i) {
    t.add({to_db(c.thresholds[i]), c.values[i], c.ci_halfwidth[i], std::string(op_name(op)), label});
  }
}

Table median_table() {
  return Table{"medians", {"operator", "median_sinr_db", "area_rate", "provenance"}, {}};
}

struct Runner {
  const RunConfig& c;
  ResultRecord& out;
  int threads;

  std::vector<double> thresholds() const { return c.thresholds.linear(); }

  CoverageCurve mc_curve(const mc::Samples& smp, mc::Operator op, const Scenario& s) const {
    const auto& v = op == mc::Operator::Primary ? smp.sinr_primary : smp.sinr_secondary;
    return mc::empirical_coverage(v, thresholds(), s.seed);
  }

  void monte_carlo() {
    const Scenario s = prepared(c.scenario);
    const mc::Samples smp = mc::simulate(s, threads);
    Table cov = coverage_table("coverage");
    Table med = median_table();
    for (auto op : {mc::Operator::Primary, mc::Operator::Secondary}) {
      const auto curve = mc_curve(smp, op, s);
      add_curve(cov, curve, op);
      const auto& v = op == mc::Operator::Primary ? smp.sinr_primary : smp.sinr_secondary;
      const auto r = median_rate(v, s, op, c.rate);
      med.add({std::string(op_name(op)), db_of(r.sinr), r.rate, curve.provenance_label()});
    }
    out.tables = {cov, med};
    out.notes.push_back("rejected realizations: " + std::to_string(smp.rejected));
  }

  void analytic() {
    const Scenario s = prepared(c.scenario);
    const AnalyticModel m(s, c.quadrature);
    Table cov = coverage_table("coverage");
    Table med = median_table();
    for (auto op : {mc::Operator::Primary, mc::Operator::Secondary}) {
      const auto curve = m.curve(op, thresholds(), threads);
      add_curve(cov, curve, op);
      const auto r = median_rate(m, op, c.rate);
      med.add({std::string(op_name(op)), db_of(r.sinr), r.rate, curve.provenance_label()});
    }
    out.tables = {cov, med};
  }

  void validate() {
    std::vector<double> densities = c.validate_run.secondary_densities;
    if (densities.empty()) densities.push_back(c.scenario.secondary.bs_density);
    Table gaps{"gaps",
               {"lambda_st_per_km2", "operator", "max_gap", "threshold_db_at_max", "tolerance", "pass"},
               {}};
    for (double d : densities) {
      const Scenario s = with_secondary_density(c.scenario, d);
      const mc::Samples smp = mc::simulate(s, threads);
      const AnalyticModel m(s, c.quadrature);
      Table cov = coverage_table("validate_lst" + short_num(to_per_km2(d)));
      for (auto op : {mc::Operator::Primary, mc::Operator::Secondary}) {
        const auto sim = mc_curve(smp, op, s);
        const auto ana = m.curve(op, thresholds(), threads);
        add_curve(cov, sim, op);
        add_curve(cov, ana, op);
        double gap = 0.0;
        double at = sim.thresholds.front();
        for (std::size_t i = 0; i < sim.size(); ++i) {
          const double g = std::abs(sim.values[i] - ana.values[i]);
          if (g > gap) {
            gap = g;
            at = sim.thresholds[i];
          }
        }
        const bool pass = gap <= c.validate_run.tolerance;
        if (!pass) out.status = 2;
        gaps.add({to_per_km2(d), std::string(op_name(op)), gap, to_db(at), c.validate_run.tolerance,
                  static_cast<long long>(pass)});
      }
      out.tables.push_back(std::move(cov));
    }
    out.tables.push_back(std::move(gaps));
  }

  void sweep_xi_mode() {
    const Scenario s = prepared(c.scenario);
    const LinearPricing pricing(c.pricing);
    const XiSweep sw = sweep_xi(s, c.xi_grid.linear(), pricing, c.rate, threads, c.quadrature);
    Table t{"sweep_xi",
            {"xi_db", "r_p", "r_s", "u_p", "u_s", "u_c", "sinr_p_db", "sinr_s_db", "revenue_p", "revenue_s",
             "pay_p", "pay_sc", "pay_sp", "error"},
            {}};
    for (const auto& u : sw.rows) {
      t.add({to_db(u.xi), u.r_p, u.r_s, u.u_p, u.u_s, u.u_c, db_of(u.sinr_p), db_of(u.sinr_s),
             u.revenue_p, u.revenue_s, u.pay_p, u.pay_sc, u.pay_sp, u.error});
    }
    Table opt{"optima", {"quantity", "index", "xi_db", "value"}, {}};
    auto add_opt = [&](const char* name, const std::optional<std::size_t>& i, double (*key)(const UtilityReport&)) {
      if (!i) return;
      opt.add({std::string(name), static_cast<long long>(*i), to_db(sw.rows[*i].xi), key(sw.rows[*i])});
    };
    add_opt("u_p", sw.argmax_u_p, [](const UtilityReport& u) { return u.u_p; });
    add_opt("u_p+u_c", sw.argmax_u_pc, [](const UtilityReport& u) { return u.u_p + u.u_c; });
    add_opt("u_c", sw.argmax_u_c, [](const UtilityReport& u) { return u.u_c; });
    out.tables = {t, opt};
  }

  void compare_modes() {
    const Scenario s = prepared(c.scenario);
    const auto rows =
        compare_sharing_modes(s, c.compare.lambda_a, c.compare.lambda_b, c.xi_grid.linear(), c.rate, threads,
                              c.quadrature);
    Table t{"compare_modes",
            {"lambda_b_per_km2", "xi_db", "restricted_primary", "restricted_secondary", "restricted_sum",
             "uncoordinated_primary", "uncoordinated_secondary", "uncoordinated_sum", "error"},
            {}};
    for (const auto& r : rows) {
      t.add({to_per_km2(r.lambda_b), to_db(r.xi), r.restricted_primary, r.restricted_secondary, r.restricted_sum,
             r.uncoordinated_primary, r.uncoordinated_secondary, r.uncoordinated_sum, r.error});
    }
    Table g{"mode_gaps", {"lambda_b_per_km2", "best_gap"}, {}};
    for (double lb : c.compare.lambda_b) g.add({to_per_km2(lb), best_mode_gap(rows, lb)});
    out.tables = {t, g};
  }

  void sweep_density_mode() {
    const Scenario s = prepared(c.scenario);
    const auto rows = sweep_density(s, c.densities, c.rate, threads, c.quadrature);
    Table t{"sweep_density", {"lambda_st_per_km2", "sinr_p_db", "r_p", "sinr_s_db", "r_s", "error"}, {}};
    for (const auto& r : rows) {
      t.add({to_per_km2(r.lambda_st), db_of(r.primary.sinr), r.primary.rate, db_of(r.secondary.sinr),
             r.secondary.rate, r.error});
    }
    out.tables = {t};
  }

  void sweep_beamwidth_mode() {
    const Scenario s = prepared(c.scenario);
    const auto rows =
        sweep_beamwidth(s, c.beam.elements, c.beam.kappa, c.beam.both_operators, c.rate, threads, c.quadrature);
    Table t{"sweep_beamwidth", {"elements", "beamwidth_deg", "sinr_p_db", "r_p", "sinr_s_db", "r_s", "error"}, {}};
    for (const auto& r : rows) {
      t.add({static_cast<long long>(r.antennas), r.beamwidth * 180.0 / kPi, db_of(r.primary.sinr),
             r.primary.rate, db_of(r.secondary.sinr), r.secondary.rate, r.error});
    }
    out.tables = {t};
  }
};

std::string csv_field(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return num(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return num(*d);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

ordered_json tables_json(const ResultRecord& r) {
  ordered_json t = ordered_json::object();
  for (const auto& tab : r.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : tab.rows) {
      ordered_json j = ordered_json::array();
      for (const auto& cell : row) j.push_back(cell_json(cell));
      rows.push_back(std::move(j));
    }
    t[tab.name] = {{"columns", tab.columns}, {"rows", std::move(rows)}};
  }
  return t;
}

ordered_json meta_json(const ResultRecord& r) {
  ordered_json m;
  m["mode"] = to_string(r.mode);
  m["version"] = kVersion;
  m["seed"] = r.seed;
  m["config_hash"] = r.config_hash;
  m["threads"] = r.threads;
  m["duration_s"] = r.duration_s;
  m["status"] = r.status;
  ordered_json tol = ordered_json::object();
  for (const auto& [k, v] : r.tolerances) tol[k] = v;
  m["tolerances"] = tol;
  ordered_json eng = ordered_json::object();
  for (const auto& [k, v] : r.engines) eng[k] = v;
  m["engines"] = eng;
  m["notes"] = r.notes;
  std::vector<std::string> names;
  for (const auto& t : r.tables) names.push_back(t.name);
  m["tables"] = names;
  return m;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
  f << text;
  f.close();
  if (!f) throw std::runtime_error("write failed: " + p.string());
}

}  // namespace

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::invalid_argument("table " + name + ": row width mismatch");
  rows.push_back(std::move(row));
}

const Table& ResultRecord::table(const std::string& name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no table named " + name);
}

ResultRecord run(const RunConfig& c) {
  c.validate();
  const auto t0 = std::chrono::steady_clock::now();
  ResultRecord out;
  out.mode = c.mode;
  out.seed = c.scenario.seed;
  out.config_hash = config_hash(c);
  out.canonical_config = canonical_config(c);
  out.threads = c.threads > 0 ? c.threads : omp_get_max_threads();
  out.engines = {{"montecarlo", "PPP drop in a disk, Philox4x32-10 streams per ring"},
                 {"analytic", "adaptive Gauss-Kronrod 21, cubic B-spline kernel table"},
                 {"inverse", "TOMS 748 on ln tau"}};
  out.tolerances = {{"quadrature_rel", c.quadrature.rel},
                    {"quadrature_outer_rel", c.quadrature.outer_rel},
                    {"quadrature_outer_abs", c.quadrature.outer_abs},
                    {"sinr_tolerance", c.rate.sinr_tolerance},
                    {"mc_ci_level", 0.95}};
  if (c.mode == Mode::Validate) out.tolerances.push_back({"validate_gap", c.validate_run.tolerance});

  Runner r{c, out, out.threads};
  try {
    switch (c.mode) {
      case Mode::MonteCarlo: r.monte_carlo(); break;
      case Mode::Analytic: r.analytic(); break;
      case Mode::Validate: r.validate(); break;
      case Mode::SweepXi: r.sweep_xi_mode(); break;
      case Mode::CompareModes: r.compare_modes(); break;
      case Mode::SweepDensity: r.sweep_density_mode(); break;
      case Mode::SweepBeamwidth: r.sweep_beamwidth_mode(); break;
    }
  } catch (const std::exception& e) {
    const Scenario& s = c.scenario;
    std::ostringstream ctx;
    ctx << to_string(c.mode) << " (lambda_PT " << to_per_km2(s.primary.bs_density) << "/km2, lambda_ST "
        << to_per_km2(s.secondary.bs_density) << "/km2, seed " << s.seed << "): " << e.what();
    throw std::runtime_error(ctx.str());
  }
  out.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::string to_csv(const Table& t) {
  std::string s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s += (i ? "," : "") + csv_field(t.columns[i]);
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_field(row[i]);
    s += "\n";
  }
  return s;
}

Table read_csv(const std::string& text, const std::string& name) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> rec;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      rec.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      rec.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(rec));
      rec.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  if (!field.empty() || !rec.empty()) {
    rec.push_back(std::move(field));
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw std::invalid_argument("csv: no header");
  Table t{name, records.front(), {}};
  for (std::size_t r = 1; r < records.size(); ++r) {
    std::vector<Cell> row;
    for (const auto& f : records[r]) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (!f.empty() && end == f.c_str() + f.size()) {
        row.emplace_back(v);
      } else {
        row.emplace_back(f);
      }
    }
    t.add(std::move(row));
  }
  return t;
}

std::string payload_json(const ResultRecord& r) { return tables_json(r).dump(1) + "\n"; }

std::string metadata_json(const ResultRecord& r) { return meta_json(r).dump(1) + "\n"; }

void check_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir + ": " + ec.message());
  const fs::path probe = fs::path(dir) / ".mmshare_write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw std::runtime_error("output directory " + dir + " is not writable");
  }
  fs::remove(probe, ec);
}

std::vector<std::string> emit(const ResultRecord& r, const std::string& dir, Format format) {
  check_output_dir(dir);
  const fs::path base(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& file, const std::string& text) {
    write_file(base / file, text);
    written.push_back((base / file).string());
  };
  if (format == Format::Csv) {
    for (const auto& t : r.tables) put(t.name + ".csv", to_csv(t));
    put("metadata.json", metadata_json(r));
  } else {
    ordered_json j;
    j["metadata"] = meta_json(r);
    j["tables"] = tables_json(r);
    put("result.json", j.dump(1) + "\n");
  }
  put("config.yaml", r.canonical_config);
  return written;
}

}  // namespace mmshare
