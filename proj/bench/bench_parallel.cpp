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

// Serial reference vs OpenMP for the heavy kernels. Prints wall time,
// speedup and whether the parallel result matches the serial one bit for bit.
//
//   bench_parallel [--threads N] [--realizations N] [--repeats N]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>

#include "CLI11.hpp"
#include "mmshare/analytic.hpp"
#include "mmshare/coverage_curve.hpp"
#include "mmshare/economics.hpp"
#include "mmshare/montecarlo.hpp"

using namespace mmshare;

namespace {

double best_of(int repeats, const std::function<void()>& f) {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-22s %10.3f %10.3f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs OpenMP timings"};
  int threads = omp_get_max_threads();
  std::size_t realizations = 4000;
  int repeats = 3;
  app.add_option("--threads", threads, "threads for the parallel runs")->check(CLI::PositiveNumber);
  app.add_option("--realizations", realizations, "Monte Carlo realizations")->check(CLI::PositiveNumber);
  app.add_option("--repeats", repeats, "best of N")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  Scenario s = baseline_scenario(30.0);
  s.n_realizations = realizations;
  std::printf("threads %d, %zu realizations, best of %d\n", threads, realizations, repeats);
  std::printf("%-22s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  mc::Samples a, b;
  const double t_mc_s = best_of(repeats, [&] { a = mc::simulate_serial(s); });
  const double t_mc_p = best_of(repeats, [&] { b = mc::simulate(s, threads); });
  row("monte carlo", t_mc_s, t_mc_p, a.sinr_primary == b.sinr_primary && a.sinr_secondary == b.sinr_secondary);

  std::shared_ptr<const RestrictedKernel> k1, kn;
  const double t_k_s = best_of(repeats, [&] { k1 = make_restricted_kernel(s, 1); });
  const double t_k_p = best_of(repeats, [&] { kn = make_restricted_kernel(s, threads); });
  row("kernel tables", t_k_s, t_k_p, k1->value(LinkType::LOS, 0.3) == kn->value(LinkType::LOS, 0.3));

  const AnalyticModel m(s, {}, k1);
  const auto grid = db_grid(-20.0, 40.0, 31);
  CoverageCurve c1, cn;
  const double t_c_s = best_of(repeats, [&] { c1 = m.curve_serial(mc::Operator::Secondary, grid); });
  const double t_c_p = best_of(repeats, [&] { cn = m.curve(mc::Operator::Secondary, grid, threads); });
  row("analytic curve", t_c_s, t_c_p, c1.values == cn.values);

  const auto xi = default_xi_grid();
  XiSweep w1, wn;
  const double t_x_s = best_of(1, [&] { w1 = sweep_xi_serial(s, xi, LinearPricing{}, RateSettings{}); });
  const double t_x_p = best_of(1, [&] { wn = sweep_xi(s, xi, LinearPricing{}, RateSettings{}, threads); });
  bool same = w1.rows.size() == wn.rows.size();
  for (std::size_t i = 0; same && i < w1.rows.size(); ++i) {
    same = w1.rows[i].r_p == wn.rows[i].r_p && w1.rows[i].r_s == wn.rows[i].r_s;
  }
  row("xi sweep", t_x_s, t_x_p, same);
  return 0;
}
