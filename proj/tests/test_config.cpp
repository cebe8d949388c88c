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

#include <cmath>
#include <string>

#include "doctest.h"
#include "mmshare/config.hpp"
#include "mmshare/units.hpp"

using namespace mmshare;

namespace {

std::string baseline_path() { return std::string(MMSHARE_SOURCE_DIR) + "/configs/baseline.yaml"; }

std::string error_of(const std::string& yaml) {
  try {
    parse_config(yaml, "t.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("baseline file loads to the reference deployment") {
    const RunConfig c = load_config(baseline_path());
    Scenario ref = baseline_scenario(30.0);
    const Scenario& s = c.scenario;
    CHECK(s.channel.blockage.decay_length() == 150.0);
    CHECK(s.channel.alpha == ref.channel.alpha);
    CHECK(s.channel.gain[0] == doctest::Approx(1e-6).epsilon(1e-15));
    CHECK(s.primary_power() == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(s.primary.noise_power == doctest::Approx(1e-11).epsilon(1e-15));
    CHECK(s.xi() == doctest::Approx(1e-12).epsilon(1e-15));
    CHECK(s.primary.bs_density == per_km2(30.0));
    CHECK(s.secondary.user_density == per_km2(150.0));
    CHECK(s.primary.antenna.main_gain == ref.primary.antenna.main_gain);
    CHECK(s.secondary.antenna.beamwidth == ref.secondary.antenna.beamwidth);
    CHECK(s.n_realizations == 20000);
    CHECK(s.window_radius == 0.0);
    CHECK(c.rate.bandwidth == 500e6);
    CHECK(c.carrier_frequency == 28e9);
    CHECK(c.validate_run.secondary_densities == std::vector<double>{per_km2(30.0), per_km2(60.0)});
    CHECK(c.xi_grid.linear() == default_xi_grid());
    CHECK(c.pricing.pi_sp == 0.25);
  }

  TEST_CASE("empty file gives the defaults") {
    const RunConfig c = parse_config("");
    CHECK(config_hash(c) == config_hash(default_run_config()));
  }

  TEST_CASE("units") {
    const RunConfig a = parse_config("primary: {power: 10 W, noise: -80 dBm, bs_density: 3e-5}\n"
                                     "secondary: {antenna: {main_gain: 10 dB, beamwidth: 30 deg}}\n"
                                     "channel: {beta: 0.2 km}\n");
    CHECK(a.scenario.primary_power() == 10.0);
    CHECK(a.scenario.primary.noise_power == doctest::Approx(1e-11).epsilon(1e-15));
    CHECK(a.scenario.primary.bs_density == 3e-5);
    CHECK(a.scenario.secondary.antenna.main_gain == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(a.scenario.secondary.antenna.beamwidth == doctest::Approx(kPi / 6.0).epsilon(1e-15));
    CHECK(a.scenario.channel.blockage.decay_length() == doctest::Approx(200.0));
    const auto e = error_of("primary: {bs_density: 30 dB}\n");
    CHECK(contains(e, "primary.bs_density"));
    CHECK(contains(e, "unit 'dB'"));
    CHECK(contains(e, "line 1"));
  }

  TEST_CASE("beamwidth above 2 pi is rejected with the invariant") {
    const auto e = error_of("mode: analytic\nsecondary:\n  antenna: {main_gain: 1, beamwidth: 400 deg}\n");
    CHECK(contains(e, "secondary.antenna"));
    CHECK(contains(e, "beamwidth must lie in (0, 2*pi]"));
    CHECK(contains(e, "line 3"));
  }

  TEST_CASE("other invariants and parse errors") {
    CHECK(contains(error_of("channel: {alpha: {los: 1.8}}\n"), "alpha_LOS must exceed 2"));
    CHECK(contains(error_of("primary: {interference_cap: -120 dB}\n"), "fixed power"));
    CHECK(contains(error_of("primary: {bs_density: -3 /km2}\n"), "bs_density must be positive"));
    CHECK(contains(error_of("primary: {antenna: {main_gain: 4, side_gain: 1, beamwidth: 1}}\n"),
                   "power conservation"));
    CHECK(contains(error_of("rate: {coverage_level: 1.5}\n"), "coverage_level"));
    CHECK(contains(error_of("primry: {}\n"), "primry: unknown key"));
    CHECK(contains(error_of("primary: {bs_densty: 3}\n"), "primary.bs_densty: unknown key"));
    CHECK(contains(error_of("mode: sideways\n"), "unknown mode"));
    const auto e = error_of("seed: 1\nprimary: {power: [1, 2\n");
    CHECK(contains(e, "t.yaml: line"));
  }

  TEST_CASE("mode requirements") {
    CHECK(contains(error_of("mode: sweep-xi\nsecondary: {power: 1 W}\n"), "sweep-xi needs secondary.interference_cap"));
    CHECK(contains(error_of("mode: compare-modes\ncompare_modes: {lambda_b: []}\n"), "compare_modes.lambda_b"));
    CHECK(contains(error_of("mode: validate\nthresholds: {lo: 10, hi: 0}\n"), "hi must exceed lo"));
    CHECK(contains(error_of("mode: sweep-beamwidth\nsweep_beamwidth: {kappa: 0}\n"), "kappa"));
    CHECK(error_of("mode: sweep-xi\nsecondary: {power: 1 W}\nthresholds: {lo: 10, hi: 0}\n") != "");
    CHECK(error_of("mode: analytic\nsecondary: {power: 1 W}\n") == "");
  }

  TEST_CASE("canonical round trip keeps the hash") {
    RunConfig c = load_config(baseline_path());
    c.mode = Mode::CompareModes;
    const std::string text = canonical_config(c);
    const RunConfig back = parse_config(text, "canonical");
    CHECK(canonical_config(back) == text);
    CHECK(config_hash(back) == config_hash(c));
    CHECK(config_hash(c).size() == 16);

    const RunConfig u = parse_config("secondary: {power: 0.5 W, antenna: omni}\nchannel: {blockage: none}\n");
    CHECK(canonical_config(parse_config(canonical_config(u))) == canonical_config(u));
  }

  TEST_CASE("hash ignores seed, threads and format") {
    RunConfig c = load_config(baseline_path());
    const std::string h = config_hash(c);
    c.scenario.seed = 99;
    c.threads = 7;
    c.format = Format::Json;
    CHECK(config_hash(c) == h);
    c.scenario.secondary.power = InterferenceCap{from_db(-119.0)};
    CHECK(config_hash(c) != h);
  }
}
