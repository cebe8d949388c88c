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

#include "mmshare/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace mmshare::quad {

QuadratureError::QuadratureError(const std::string& what, double achieved_error)
    : std::runtime_error(what + " (achieved error " + std::to_string(achieved_error) + ")"),
      achieved_(achieved_error) {}

namespace {

// QUADPACK qk21 abscissae and weights.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525543163, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel kronrod21(const Integrand& f, double a, double b) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  const double fc = f(centr);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 5; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 5; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  resabs *= dhlgth;
  resasc *= dhlgth;
  double abserr = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0) {
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * eps)) {
    abserr = std::max(eps * 50.0 * resabs, abserr);
  }
  return Panel{a, b, resk * hlgth, abserr};
}

}  // namespace

Result gauss_kronrod(const Integrand& f, double a, double b, const Tolerance& tol,
                     std::size_t initial_panels) {
  Result out;
  if (a == b) return out;
  initial_panels = std::max<std::size_t>(1, initial_panels);

  std::priority_queue<Panel> heap;
  std::vector<Panel> frozen;
  double total = 0.0;
  double total_err = 0.0;
  const double width = (b - a) / static_cast<double>(initial_panels);
  for (std::size_t i = 0; i < initial_panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial_panels) ? b : lo + width;
    Panel p = kronrod21(f, lo, hi);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  out.evaluations = 21 * initial_panels;

  std::size_t splits = 0;
  while (!heap.empty()) {
    const double target = std::max(tol.abs, tol.rel * std::abs(total));
    if (!(total_err > target)) break;
    if (splits >= tol.max_subdivisions) {
      out.converged = false;
      break;
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) < 1e-15 * (std::abs(worst.a) + std::abs(worst.b))) {
      frozen.push_back(worst);
      continue;
    }
    const Panel left = kronrod21(f, worst.a, mid);
    const Panel right = kronrod21(f, mid, worst.b);
    out.evaluations += 42;
    ++splits;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  for (const Panel& p : frozen) {
    total += p.value;
    total_err += p.error;
  }
  out.value = total;
  out.error = total_err;
  if (!std::isfinite(total) || total_err > std::max(tol.abs, tol.rel * std::abs(total))) {
    out.converged = false;
  }
  return out;
}

Result log_scale(const Integrand& f, double a, double b, const Tolerance& tol,
                 std::size_t initial_panels) {
  const double la = std::log(a);
  const double lb = std::log(b);
  const auto panels =
      std::max<std::size_t>(initial_panels, static_cast<std::size_t>(std::ceil((lb - la) / 4.0)));
  return gauss_kronrod(
      [&f](double s) {
        const double x = std::exp(s);
        return f(x) * x;
      },
      la, lb, tol, panels);
}

Result semi_infinite(const Integrand& f, double a, const SemiInfinite& shape, const Tolerance& tol) {
  if (!(a >= 0.0) || !(shape.scale > 0.0) || !(shape.decay > 1.0)) {
    throw std::invalid_argument("semi_infinite: need a >= 0, scale > 0 and decay > 1");
  }
  const double upper = std::max(a, shape.scale) * std::pow(10.0, shape.upper_decades);
  const double start = a > 0.0 ? a : shape.scale * std::pow(10.0, -shape.lower_decades);

  Result main = gauss_kronrod(
      [&f](double s) {
        const double x = std::exp(s);
        return f(x) * x;
      },
      std::log(start), std::log(upper), tol, shape.panels);
  Tolerance minor = tol;
  minor.abs = std::max(tol.abs, 0.1 * tol.rel * std::abs(main.value));

  Result head;
  if (a == 0.0 && shape.head) head = gauss_kronrod(f, 0.0, start, minor);

  const double p = 1.0 / (shape.decay - 1.0);
  Result tail = gauss_kronrod(
      [&f, upper, p](double t) {
        const double x = upper * std::pow(t, -p);
        if (!std::isfinite(x)) return 0.0;
        return f(x) * p * x / t;
      },
      0.0, 1.0, minor);

  Result out;
  out.value = head.value + main.value + tail.value;
  out.error = head.error + main.error + tail.error;
  out.evaluations = head.evaluations + main.evaluations + tail.evaluations;
  out.converged = head.converged && main.converged && tail.converged;
  return out;
}

double checked(const Result& r, const char* what) {
  if (!r.converged || !std::isfinite(r.value)) throw QuadratureError(what, r.error);
  return r.value;
}

}  // namespace mmshare::quad
