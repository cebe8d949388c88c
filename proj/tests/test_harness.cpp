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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mmshare/harness.hpp"
#include "mmshare/units.hpp"

using namespace mmshare;

namespace {

RunConfig small(Mode mode) {
  RunConfig c = parse_config(
      "realizations: 300\n"
      "thresholds: {lo: -10 dB, hi: 30 dB, points: 5}\n"
      "xi_grid: {lo: -130 dB, hi: -90 dB, points: 3}\n"
      "compare_modes: {lambda_b: [30 /km2, 60 /km2]}\n"
      "sweep_density: {densities: [30 /km2, 60 /km2]}\n"
      "sweep_beamwidth: {elements: [1, 16]}\n"
      "validate: {secondary_densities: [30 /km2]}\n");
  c.mode = mode;
  return c;
}

std::string all_csv(const ResultRecord& r) {
  std::string s;
  for (const auto& t : r.tables) s += t.name + "\n" + to_csv(t);
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("curve tables have the documented columns") {
    for (Mode m : {Mode::MonteCarlo, Mode::Analytic}) {
      const auto r = run(small(m));
      const auto& t = r.table("coverage");
      CHECK(t.columns == std::vector<std::string>{"threshold_db", "value", "ci_halfwidth", "operator", "provenance"});
      CHECK(t.rows.size() == 10);
      CHECK(std::get<double>(t.rows[0][0]) == doctest::Approx(-10.0));
      CHECK(r.table("medians").rows.size() == 2);
    }
  }

  TEST_CASE("same seed gives the same payload for any thread count") {
    for (Mode m : {Mode::MonteCarlo, Mode::Validate}) {
      RunConfig c = small(m);
      c.threads = 1;
      const auto a = run(c);
      c.threads = 3;
      const auto b = run(c);
      CHECK(all_csv(a) == all_csv(b));
      CHECK(payload_json(a) == payload_json(b));
      c.scenario.seed = 2;
      CHECK(all_csv(run(c)) != all_csv(a));
    }
  }

  TEST_CASE("sweep-xi emits one row per grid point") {
    const auto r = run(small(Mode::SweepXi));
    const auto& t = r.table("sweep_xi");
    REQUIRE(t.columns.size() >= 6);
    CHECK(std::vector<std::string>(t.columns.begin(), t.columns.begin() + 6) ==
          std::vector<std::string>{"xi_db", "r_p", "r_s", "u_p", "u_s", "u_c"});
    REQUIRE(t.rows.size() == 3);
    CHECK(std::get<double>(t.rows[1][0]) == doctest::Approx(-110.0));
    CHECK(r.table("optima").rows.size() == 3);
  }

  TEST_CASE("sweep tables") {
    const auto m = run(small(Mode::CompareModes));
    CHECK(m.table("mode_gaps").rows.size() == 2);
    CHECK(m.table("compare_modes").rows.size() == 6);
    CHECK(run(small(Mode::SweepDensity)).table("sweep_density").rows.size() == 2);
    const auto b = run(small(Mode::SweepBeamwidth)).table("sweep_beamwidth");
    REQUIRE(b.rows.size() == 2);
    CHECK(std::get<double>(b.rows[0][1]) == doctest::Approx(360.0));
  }

  TEST_CASE("validate status follows the tolerance") {
    RunConfig c = small(Mode::Validate);
    c.validate_run.tolerance = 1.0;
    CHECK(run(c).status == 0);
    c.validate_run.tolerance = 1e-9;
    const auto r = run(c);
    CHECK(r.status == 2);
    CHECK(r.table("gaps").rows.size() == 2);
  }

  TEST_CASE("CSV round trip at 17 digits") {
    const auto r = run(small(Mode::MonteCarlo));
    const auto& t = r.table("coverage");
    const Table back = read_csv(to_csv(t), t.name);
    CHECK(back.columns == t.columns);
    REQUIRE(back.rows.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      for (std::size_t j = 0; j < t.rows[i].size(); ++j) CHECK(back.rows[i][j] == t.rows[i][j]);
    }
  }

  TEST_CASE("emit writes files with seed and hash") {
    const auto dir = std::filesystem::temp_directory_path() / "mmshare_harness_test";
    std::filesystem::remove_all(dir);
    RunConfig c = small(Mode::Analytic);
    c.scenario.seed = 77;
    const auto r = run(c);
    const auto csv = emit(r, dir.string(), Format::Csv);
    CHECK(csv.size() == 4);
    CHECK(slurp(dir / "coverage.csv") == to_csv(r.table("coverage")));
    const auto meta = nlohmann::json::parse(slurp(dir / "metadata.json"));
    CHECK(meta["seed"] == 77);
    CHECK(meta["config_hash"] == config_hash(c));
    CHECK(parse_config(slurp(dir / "config.yaml")).scenario.seed == 77);

    emit(r, dir.string(), Format::Json);
    const auto j = nlohmann::json::parse(slurp(dir / "result.json"));
    CHECK(j["metadata"]["seed"] == 77);
    CHECK(j["metadata"]["config_hash"] == r.config_hash);
    CHECK(j["tables"]["coverage"]["rows"].size() == 10);
    CHECK(j["tables"]["coverage"]["rows"][3][1].get<double>() == std::get<double>(r.table("coverage").rows[3][1]));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("engine errors carry the scenario") {
    RunConfig c = small(Mode::Analytic);
    c.rate.coverage_level = 1e-300;
    try {
      run(c);
      FAIL("expected an error");
    } catch (const std::runtime_error& e) {
      const std::string what = e.what();
      CHECK(what.find("analytic (lambda_PT 30/km2, lambda_ST 30/km2, seed 1)") == 0);
    }
  }
}
