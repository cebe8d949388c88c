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
#include <random>
#include <vector>

#include "doctest.h"
#include "mmshare/economics.hpp"
#include "mmshare/units.hpp"

using namespace mmshare;

namespace {

const AnalyticModel& baseline_model() {
  static const AnalyticModel m(baseline_scenario(60.0));
  return m;
}

std::vector<double> coarse_xi_grid() {
  std::vector<double> g;
  for (double db = -130.0; db <= -90.0; db += 10.0) g.push_back(from_db(db));
  return g;
}

}  // namespace

TEST_SUITE("economics") {
  TEST_CASE("mean load") {
    CHECK(mean_load(1.0, 1.0) == doctest::Approx(2.28).epsilon(1e-15));
    CHECK(mean_load(0.0, 1.0) == 1.0);
    CHECK(mean_load(per_km2(150.0), per_km2(30.0)) == doctest::Approx(7.4).epsilon(1e-14));
    CHECK_THROWS_AS(mean_load(1.0, 0.0), std::invalid_argument);
    const auto lm = LoadModel::from_scenario(baseline_scenario(60.0), 500e6);
    CHECK(lm.load(mc::Operator::Primary) == doctest::Approx(7.4));
    CHECK(lm.load(mc::Operator::Secondary) == doctest::Approx(4.2));
  }

  TEST_CASE("SINR needed for a rate") {
    CHECK(sinr_for_rate(0.0, 3.0, 1e6) == 0.0);
    CHECK(sinr_for_rate(1e6, 1.0, 1e6) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sinr_for_rate(1e6, 1.0, 1e6, LogBase::Natural) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
    CHECK(sinr_for_rate(1e6, 2.0, 1e6) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(sinr_for_rate(-1.0, 1.0, 1e6), std::domain_error);
  }

  TEST_CASE("rate coverage from a tabulated curve") {
    CoverageCurve c;
    c.thresholds = db_grid(-10.0, 10.0, 3);
    c.values = {0.9, 0.5, 0.1};
    c.ci_halfwidth = {0.0, 0.0, 0.0};
    CHECK(rate_coverage(c, 1.0, 1e6, 0.0) == 1.0);
    CHECK(rate_coverage(c, 1.0, 1e6, 1e6) == doctest::Approx(0.5).epsilon(1e-12));
    // Halfway between 0 and 10 dB in log threshold.
    const double rho = std::log2(1.0 + from_db(5.0)) * 1e6;
    CHECK(rate_coverage(c, 1.0, 1e6, rho) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(rate_coverage(c, 1.0, 1e6, 1e8), std::out_of_range);
  }

  TEST_CASE("rate coverage is invariant under joint scaling of W and rho") {
    const auto& m = baseline_model();
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 5; ++i) {
      const double rho = u(gen) * 1e8;
      const double c = 10.0 * u(gen);
      const double a = rate_coverage(m, mc::Operator::Secondary, 4.2, 500e6, rho);
      const double b = rate_coverage(m, mc::Operator::Secondary, 4.2, c * 500e6, c * rho);
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
  }

  TEST_CASE("inverse coverage") {
    auto f = [](double t) { return 1.0 / (1.0 + t); };
    CHECK(std::abs(inverse_coverage(f, 0.5) - 1.0) <= 1e-4);
    CHECK(std::abs(inverse_coverage(f, 0.9, 1e-9) - 1.0 / 9.0) <= 1e-9);
    // Needs bracket growth on both sides.
    auto g = [](double t) { return 1.0 / (1.0 + t * 1e-7); };
    CHECK(std::abs(inverse_coverage(g, 0.5, 1.0) - 1e7) <= 1.0);
    auto h = [](double t) { return 1.0 / (1.0 + t * 1e7); };
    CHECK(std::abs(inverse_coverage(h, 0.5, 1e-12) - 1e-7) <= 1e-12);
    CHECK_THROWS_AS(inverse_coverage([](double) { return 1.0; }, 0.5), std::runtime_error);
    CHECK_THROWS_AS(inverse_coverage(f, 1.0), std::domain_error);

    const auto& m = baseline_model();
    for (auto op : {mc::Operator::Primary, mc::Operator::Secondary}) {
      const double tau = inverse_coverage([&](double t) { return m.coverage(op, t); }, 0.5);
      const double lo = m.coverage(op, tau - 1e-4);
      const double hi = m.coverage(op, tau + 1e-4);
      CHECK(lo >= 0.5);
      CHECK(hi <= 0.5);
    }
  }

  TEST_CASE("area rate and median rate") {
    CHECK(area_rate(1.0, 2e-4, 2.0, 1e6) == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(area_rate(3.0, 2e-4, 2.0, 2e6) == doctest::Approx(2.0 * area_rate(3.0, 2e-4, 2.0, 1e6)).epsilon(1e-15));
    CHECK(area_rate(0.0, 2e-4, 2.0, 1e6) == 0.0);

    const Scenario s = baseline_scenario(60.0);
    const std::vector<double> sinr = {0.5, 1.0, 3.0, 7.0, 15.0};
    const auto r = median_rate(sinr, s, mc::Operator::Primary, RateSettings{});
    CHECK(r.sinr == doctest::Approx(3.0));
    CHECK(r.rate == doctest::Approx(500e6 * s.primary.user_density / 7.4 * 2.0).epsilon(1e-14));

    RateSettings wide;
    wide.bandwidth = 1e9;
    const auto& m = baseline_model();
    const auto a = median_rate(m, mc::Operator::Secondary, RateSettings{});
    const auto b = median_rate(m, mc::Operator::Secondary, wide);
    CHECK(b.sinr == a.sinr);
    CHECK(b.rate == doctest::Approx(2.0 * a.rate).epsilon(1e-14));
  }

  TEST_CASE("utilities conserve money") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1e5);
    const LinearPricing lin;
    const FunctionPricing fun([](double r) { return std::sqrt(r); }, [](double r) { return 2.0 * r; },
                              [](double r) { return 0.1 * r; }, [](double r) { return std::log1p(r); },
                              [](double r) { return r * r * 1e-6; });
    for (int i = 0; i < 20; ++i) {
      const double rp = u(gen);
      const double rs = u(gen);
      for (const PricingModel* p : {static_cast<const PricingModel*>(&lin), static_cast<const PricingModel*>(&fun)}) {
        const auto x = utilities(rp, rs, *p);
        CHECK(x.u_p + x.u_s + x.u_c == doctest::Approx(x.revenue_p + x.revenue_s).epsilon(1e-12));
      }
      const auto y = utilities(rp, rs, lin);
      CHECK(y.u_c == doctest::Approx(0.25 * rp + 0.125 * rs).epsilon(1e-14));
      CHECK(y.u_p == doctest::Approx(0.75 * rp + 0.25 * rs).epsilon(1e-14));
    }
    const auto z = utilities(1e4, 0.0, lin);
    CHECK(z.u_s == 0.0);
    CHECK(z.pay_sp == 0.0);
    CHECK_THROWS_AS(utilities(-1.0, 0.0, lin), std::domain_error);
  }

  TEST_CASE("pricing maps are checked") {
    CHECK_NOTHROW(check_pricing(LinearPricing{}, 1e6));
    const FunctionPricing falling([](double r) { return r; }, [](double r) { return r; },
                                  [](double r) { return r; }, [](double r) { return r; },
                                  [](double r) { return 1.0 / (1.0 + r); });
    CHECK_THROWS_WITH_AS(check_pricing(falling, 1e6), "pricing: P_SP decreases", std::invalid_argument);
    const FunctionPricing negative([](double r) { return r - 1.0; }, [](double r) { return r; },
                                   [](double r) { return r; }, [](double r) { return r; },
                                   [](double r) { return r; });
    CHECK_THROWS_WITH_AS(check_pricing(negative, 1e6), "pricing: M_P is negative", std::invalid_argument);
    CHECK_THROWS_AS(LinearPricing(LinearPricing::Constants{1.0, 1.0, -0.1, 0.1, 0.1}), std::invalid_argument);
  }

  TEST_CASE("default xi grid") {
    const auto g = default_xi_grid();
    REQUIRE(g.size() == 21);
    CHECK(to_db(g.front()) == doctest::Approx(-130.0));
    CHECK(to_db(g.back()) == doctest::Approx(-90.0));
    CHECK(to_db(g[1]) - to_db(g[0]) == doctest::Approx(2.0));
  }

  TEST_CASE("xi sweep: parallel equals serial, secondary gains with xi") {
    const Scenario s = baseline_scenario(60.0);
    const LinearPricing p;
    const auto a = sweep_xi_serial(s, coarse_xi_grid(), p, RateSettings{});
    const auto b = sweep_xi(s, coarse_xi_grid(), p, RateSettings{}, 3);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      CHECK(a.rows[i].ok());
      CHECK(a.rows[i].u_p == b.rows[i].u_p);
      CHECK(a.rows[i].u_s == b.rows[i].u_s);
      CHECK(a.rows[i].sinr_s == b.rows[i].sinr_s);
      if (i > 0) {
        CHECK(a.rows[i].r_s >= a.rows[i - 1].r_s);
        CHECK(a.rows[i].r_p <= a.rows[i - 1].r_p);
      }
    }
    CHECK(a.argmax_u_p == b.argmax_u_p);
    CHECK_THROWS_AS(sweep_xi(s, {1e-12, 1e-13}, p, RateSettings{}, 1), std::invalid_argument);
  }

  TEST_CASE("equal power sharing keeps the total power") {
    const Scenario s = baseline_scenario(60.0);
    const Scenario u = equal_power_sharing(s);
    const double pu = std::get<FixedPower>(u.primary.power).watts;
    CHECK(std::get<FixedPower>(u.secondary.power).watts == pu);
    const double total = s.primary.bs_density * s.primary_power() + s.secondary.bs_density * mean_secondary_power(s);
    CHECK((s.primary.bs_density + s.secondary.bs_density) * pu == doctest::Approx(total).epsilon(1e-14));
  }

  TEST_CASE("best mode gap") {
    std::vector<ModeRow> rows(4);
    const double sums[4][2] = {{3.0, 5.0}, {7.0, 5.0}, {1.0, 1.5}, {2.0, 2.1}};
    for (int i = 0; i < 4; ++i) {
      rows[i].lambda_b = i < 2 ? 1.0 : 2.0;
      rows[i].restricted_sum = sums[i][0];
      rows[i].uncoordinated_sum = sums[i][1];
    }
    rows[1].error = "failed";
    CHECK(best_mode_gap(rows, 1.0) == -2.0);
    CHECK(best_mode_gap(rows, 2.0) == doctest::Approx(-0.1));
    CHECK_THROWS_AS(best_mode_gap(rows, 3.0), std::invalid_argument);
  }

  TEST_CASE("beamwidth sweep") {
    const Scenario s = baseline_scenario(60.0);
    const auto rows = sweep_beamwidth(s, {1, 8, 64}, 0.9, false, RateSettings{}, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].beamwidth == doctest::Approx(kTwoPi));
    CHECK(rows[2].beamwidth == doctest::Approx(kTwoPi * 0.9 / 64.0));
    for (const auto& r : rows) CHECK(r.error.empty());
    CHECK(rows[1].secondary.sinr > rows[0].secondary.sinr);
    CHECK(rows[2].secondary.sinr > rows[1].secondary.sinr);
  }
}
