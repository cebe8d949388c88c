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

// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
// here and never read from the command line.
//
//   acceptance [--only N ...] [--threads N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

#include "CLI11.hpp"
#include "mmshare/analytic.hpp"
#include "mmshare/economics.hpp"
#include "mmshare/harness.hpp"
#include "mmshare/montecarlo.hpp"
#include "mmshare/units.hpp"
#include "oracles/pgfl_oracle.hpp"

using namespace mmshare;

namespace {

constexpr double kGapTol = 0.02;
constexpr std::size_t kRealizations = 20000;
constexpr std::uint64_t kSeed = 20170101;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

int g_threads = 0;

// Baseline runs shared by criteria 1 and 2.
struct BaselineRun {
  double gap_p = 0.0;
  double gap_s = 0.0;
  double med_p = 0.0;
  double med_s = 0.0;
};

const BaselineRun& baseline_run(double lambda_st) {
  static std::map<double, BaselineRun> cache;
  auto it = cache.find(lambda_st);
  if (it != cache.end()) return it->second;
  Scenario s = baseline_scenario(lambda_st);
  s.n_realizations = kRealizations;
  s.seed = kSeed;
  const auto grid = db_grid(-20.0, 40.0, 61);
  const mc::Samples smp = mc::simulate(s, g_threads);
  const AnalyticModel m(s);
  BaselineRun r;
  for (auto op : {mc::Operator::Primary, mc::Operator::Secondary}) {
    const auto& v = op == mc::Operator::Primary ? smp.sinr_primary : smp.sinr_secondary;
    const auto sim = mc::empirical_coverage(v, grid, s.seed);
    const auto ana = m.curve(op, grid, g_threads);
    double gap = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) gap = std::max(gap, std::abs(sim.values[i] - ana.values[i]));
    const double med = to_db(mc::empirical_quantile(v, 0.5));
    (op == mc::Operator::Primary ? r.gap_p : r.gap_s) = gap;
    (op == mc::Operator::Primary ? r.med_p : r.med_s) = med;
  }
  return cache.emplace(lambda_st, r).first->second;
}

Outcome mc_analytic_agreement() {
  Outcome o{true, ""};
  for (double l : {30.0, 60.0}) {
    const auto& r = baseline_run(l);
    o.pass = o.pass && r.gap_p <= kGapTol && r.gap_s <= kGapTol;
    o.detail += "lambda_ST " + fmt("%g", l) + ": P " + fmt("%.4f", r.gap_p) + " S " + fmt("%.4f", r.gap_s) + "; ";
  }
  o.detail += "tol " + fmt("%g", kGapTol) + ", n=" + std::to_string(kRealizations);
  return o;
}

Outcome median_shifts() {
  const auto& a = baseline_run(30.0);
  const auto& b = baseline_run(60.0);
  const double drop = a.med_p - b.med_p;
  const bool s30 = std::abs(a.med_s - -4.0) <= 1.5;
  const bool s60 = std::abs(b.med_s - 6.0) <= 1.5;
  const bool pd = std::abs(drop - 2.0) <= 1.0;
  return {s30 && s60 && pd, "secondary median " + fmt("%.2f", a.med_s) + " dB -> " + fmt("%.2f", b.med_s) +
                                " dB (want -4 -> 6, +-1.5); primary drop " + fmt("%.2f", drop) +
                                " dB (want 2 +- 1)"};
}

Scenario equal_scenario(double lambda_st, AntennaPattern ant) {
  Scenario s = baseline_scenario(lambda_st);
  s.channel.alpha = {4.0, 4.0};
  s.channel.gain = {1e-6, 1e-6};
  s.primary.noise_power = 0.0;
  s.secondary.noise_power = 0.0;
  s.primary.antenna = ant;
  s.secondary.antenna = ant;
  return s;
}

Outcome arctan_regression() {
  const Scenario s = equal_scenario(60.0, ula_pattern(16, 1.0));
  const double theta = s.secondary.antenna.beamwidth;
  const double c = s.channel.gain[0];
  const double lpr = s.primary.user_density;
  const double ratio = s.primary.bs_density / s.secondary.bs_density;
  std::vector<double> taus;
  for (int db = -10; db <= 20; ++db) taus.push_back(from_db(db));

  // Timed from scratch (kernel tables included), best of three runs.
  std::vector<double> engine;
  double secs = INFINITY;
  for (int rep = 0; rep < 3; ++rep) {
    const auto t0 = std::chrono::steady_clock::now();
    const AnalyticModel m(s);
    engine.clear();
    for (double tau : taus) engine.push_back(m.coverage_secondary(tau));
    secs = std::min(secs, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }

  double worst = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double rt = std::sqrt(taus[i]);
    const double inner = ratio / std::sqrt(s.xi()) * std::sqrt(c * s.primary_power()) * lpr * kPi * kPi / 2.0 +
                         std::atan(rt);
    const double closed = 1.0 / (1.0 + theta * rt / (2.0 * kPi) * inner);
    worst = std::max(worst, std::abs(engine[i] - closed));
  }
  return {worst <= 1e-4 && secs < 1.0,
          "max |engine - arctan form| " + fmt("%.2e", worst) + " over 31 points (tol 1e-4), " + fmt("%.3f", secs) +
              " s best of 3 (limit 1 s)"};
}

Outcome rho_oracle() {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double worst_q = 0.0;
  double worst_c = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double tau = std::pow(10.0, u(gen));
    const double exact = std::atan(std::sqrt(tau));
    worst_q = std::max(worst_q, std::abs(rho_quadrature(4.0, tau) - exact));
    worst_c = std::max(worst_c, std::abs(rho(4.0, tau) - exact));
  }
  return {worst_q <= 1e-9 && worst_c <= 1e-9, "20 random tau: quadrature " + fmt("%.2e", worst_q) + ", rho " +
                                                  fmt("%.2e", worst_c) + " (tol 1e-9)"};
}

Outcome xi_scaling() {
  Scenario a = equal_scenario(30.0, ula_pattern(16, 0.8));
  Scenario b = a;
  b.secondary.bs_density *= 4.0;
  b.secondary.power = InterferenceCap{a.xi() / 16.0};  // 4^{-alpha/2}, alpha = 4
  const auto pa = SpecialCaseParams::from(a, true, false);
  const auto pb = SpecialCaseParams::from(b, true, false);
  const QuadratureSpec tight{1e-12, 1e-12, 0.0, 20000};
  const AnalyticModel ma(a, tight);
  const AnalyticModel mb(b, tight);
  double closed = 0.0;
  double engine = 0.0;
  for (double db : {-10.0, -3.0, 0.0, 5.0, 12.0, 20.0}) {
    const double tau = from_db(db);
    closed = std::max(closed, std::abs(coverage_secondary_closed(tau, a, pa) - coverage_secondary_closed(tau, b, pb)));
    engine = std::max(engine, std::abs(ma.coverage_secondary(tau) - mb.coverage_secondary(tau)));
  }
  // The 1e-10 bound applies to the closed form; the general engine is
  // listed for reference, its quadrature error sits near 1e-10 itself.
  return {closed <= 1e-10, "(4 lambda_ST, xi/16): closed form " + fmt("%.2e", closed) + " (tol 1e-10); general engine " +
                               fmt("%.2e", engine)};
}

double log_uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::pow(10.0, std::uniform_real_distribution<double>(lo, hi)(gen));
}

Outcome pgfl_oracle() {
  const AnalyticModel m(baseline_scenario(60.0));
  const Scenario& s = m.scenario();
  const oracle::Channel och;
  const double lam = s.primary.user_density;
  const double pp = s.primary_power();
  const double xi = s.xi();
  const double inner = oracle::restricted_inner_mass(och, lam);
  std::mt19937_64 gen(2024);
  double worst[5] = {0, 0, 0, 0, 0};
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  for (int i = 0; i < 10; ++i) {
    const double b = log_uniform(gen, -2.0, 3.0);
    const double e = log_uniform(gen, -1.0, 2.0);
    worst[0] = std::max(worst[0], rel(m.F_S(b, e), oracle::restricted_functional(och, lam, b, e)));
    const double bp = log_uniform(gen, 7.0, 11.0);
    const double ep = log_uniform(gen, 7.0, 11.0);
    worst[1] = std::max(worst[1], rel(m.F_P(bp), oracle::fixed_power_functional(och, pp, bp, 0.0)));
    worst[2] = std::max(worst[2], rel(m.E_P(bp, ep), oracle::fixed_power_functional(och, pp, bp, ep)));
    const double bx = log_uniform(gen, 10.0, 14.0);
    worst[3] = std::max(worst[3], rel(m.E_FS(bx, xi), oracle::restricted_functional(och, lam, bx * xi, 1.0)));
    worst[4] = std::max(worst[4], rel(m.E_NS(bx), inner / (1.0 + 1.0 / (bx * xi))));
  }
  const double w = *std::max_element(worst, worst + 5);
  return {w <= 1e-6, "worst relative error F_S " + fmt("%.1e", worst[0]) + ", F_P " + fmt("%.1e", worst[1]) +
                         ", E_P " + fmt("%.1e", worst[2]) + ", E_FS " + fmt("%.1e", worst[3]) + ", E_NS " +
                         fmt("%.1e", worst[4]) + " (tol 1e-6)"};
}

Outcome home_link_ks() {
  const ChannelModel ch;
  const double lam = per_km2(150.0);
  const std::size_t n = 100000;
  const auto links = mc::sample_home_links(ch, lam, 800.0, n, kSeed, g_threads);
  const HomeLinkDistribution dist(ch, lam);
  double ks = 0.0;
  for (LinkType t : {LinkType::LOS, LinkType::NLOS}) {
    std::vector<double> r;
    for (const auto& h : links) {
      if (h.type == t) r.push_back(h.distance);
    }
    std::sort(r.begin(), r.end());
    // F(r, t) at the sorted sample points by summing the pdf between them.
    auto f = [&](double x) { return home_link_pdf(dist, x, t); };
    double cdf = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      cdf += boost::math::quadrature::gauss<double, 10>::integrate(f, prev, r[i]);
      prev = r[i];
      const double below = static_cast<double>(i) / static_cast<double>(n);
      const double at = static_cast<double>(i + 1) / static_cast<double>(n);
      ks = std::max({ks, std::abs(cdf - below), std::abs(cdf - at)});
    }
  }
  return {ks < 0.01, "joint (R, T) KS distance " + fmt("%.4f", ks) + " over 1e5 associations (limit 0.01)"};
}

Outcome utility_structure() {
  const Scenario s = baseline_scenario(60.0);
  const XiSweep sw = sweep_xi(s, default_xi_grid(), LinearPricing{}, RateSettings{}, g_threads);
  Outcome o{true, ""};
  for (const auto& row : sw.rows) {
    if (!row.ok()) return {false, "xi " + fmt("%.0f", to_db(row.xi)) + " dB failed: " + row.error};
  }
  const std::size_t last = sw.rows.size() - 1;
  for (double pi_sp : {0.125, 0.25, 0.375}) {
    const LinearPricing p({1.0, 1.0, 0.25, 0.125, pi_sp});
    std::vector<UtilityReport> u;
    for (const auto& row : sw.rows) u.push_back(utilities(row.r_p, row.r_s, p));
    bool us_up = true;
    for (std::size_t i = 1; i < u.size(); ++i) us_up = us_up && u[i].u_s >= u[i - 1].u_s;
    auto argmax = [&](auto key) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < u.size(); ++i) {
        if (key(u[i]) > key(u[best])) best = i;
      }
      return best;
    };
    const std::size_t ap = argmax([](const UtilityReport& x) { return x.u_p; });
    const std::size_t ac = argmax([](const UtilityReport& x) { return x.u_c; });
    const std::size_t apc = argmax([](const UtilityReport& x) { return x.u_p + x.u_c; });
    const bool interior = ap > 0 && ap < last;
    const bool between = std::min(ap, ac) <= apc && apc <= std::max(ap, ac);
    o.pass = o.pass && us_up && interior && between;
    o.detail += "Pi_SP " + fmt("%.3f", pi_sp) + ": argmax U_P/U_P+U_C/U_C at " + fmt("%.0f", to_db(sw.rows[ap].xi)) +
                "/" + fmt("%.0f", to_db(sw.rows[apc].xi)) + "/" + fmt("%.0f", to_db(sw.rows[ac].xi)) + " dB" +
                (us_up ? "" : ", U_S not monotone") + "; ";
  }
  return o;
}

Outcome sharing_modes() {
  const std::vector<double> lb = {per_km2(30.0), per_km2(60.0), per_km2(90.0)};
  const auto rows =
      compare_sharing_modes(baseline_scenario(60.0), per_km2(60.0), lb, default_xi_grid(), RateSettings{}, g_threads);
  for (const auto& r : rows) {
    if (!r.ok()) return {false, "row failed: " + r.error};
  }
  Outcome o{true, "best restricted - uncoordinated sum rate:"};
  double prev = -INFINITY;
  for (double l : lb) {
    const double g = best_mode_gap(rows, l);
    o.pass = o.pass && g >= 0.0 && g >= prev;
    prev = g;
    o.detail += " " + fmt("%g", to_per_km2(l)) + "/km2 " + fmt("%.4g", g);
  }
  o.detail += " bit/s/m^2 (need >= 0 and non-decreasing)";
  return o;
}

Outcome determinism() {
  RunConfig base = parse_config(
      "realizations: 1500\n"
      "thresholds: {lo: -20 dB, hi: 40 dB, points: 13}\n"
      "xi_grid: {lo: -130 dB, hi: -90 dB, points: 3}\n"
      "compare_modes: {lambda_b: [30 /km2, 90 /km2]}\n"
      "sweep_density: {densities: [30 /km2, 90 /km2]}\n"
      "sweep_beamwidth: {elements: [1, 8, 64]}\n"
      "validate: {secondary_densities: [30 /km2, 60 /km2]}\n");
  auto payload = [](const ResultRecord& r) {
    std::string s;
    for (const auto& t : r.tables) s += t.name + "\n" + to_csv(t);
    return s + payload_json(r);
  };
  std::string bad;
  int modes = 0;
  for (Mode m : {Mode::MonteCarlo, Mode::Analytic, Mode::Validate, Mode::SweepXi, Mode::CompareModes,
                 Mode::SweepDensity, Mode::SweepBeamwidth}) {
    RunConfig c = base;
    c.mode = m;
    c.threads = 1;
    const std::string a = payload(run(c));
    const std::string a2 = payload(run(c));
    c.threads = 4;
    const std::string b = payload(run(c));
    if (a != a2 || a != b) bad += " " + to_string(m);
    ++modes;
  }
  return {bad.empty(), std::to_string(modes) + " modes, runs at 1, 1 and 4 threads" +
                           (bad.empty() ? std::string(" byte-identical") : " differ in:" + bad)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "criteria to run (default all)")->check(CLI::Range(1, 10));
  app.add_option("--threads", g_threads, "0 = OpenMP default");
  CLI11_PARSE(app, argc, argv);
  const std::set<int> pick(only.begin(), only.end());

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"MC-analytic agreement", mc_analytic_agreement},
      {"median SINR shifts", median_shifts},
      {"arctan closed-form regression", arctan_regression},
      {"rho oracle", rho_oracle},
      {"xi-scaling invariance", xi_scaling},
      {"PGFL oracle equivalence", pgfl_oracle},
      {"home-link KS", home_link_ks},
      {"utility structure", utility_structure},
      {"sharing-mode comparison", sharing_modes},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!pick.empty() && !pick.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  criterion %2d  %-30s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
