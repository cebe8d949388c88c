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

#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace mmshare::quad {

using Integrand = std::function<double(double)>;

struct Tolerance {
  double rel = 1e-8;
  double abs = 0.0;
  std::size_t max_subdivisions = 4000;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/// Raised when an integral misses its tolerance; carries the error actually reached.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error);
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Globally adaptive 21-point Gauss-Kronrod on [a, b], bisecting the
/// interval with the largest error estimate until the request is met.
Result gauss_kronrod(const Integrand& f, double a, double b, const Tolerance& tol,
                     std::size_t initial_panels = 1);

/// Same as gauss_kronrod but in the variable s = ln x, for 0 < a < b
/// spanning several decades.
Result log_scale(const Integrand& f, double a, double b, const Tolerance& tol,
                 std::size_t initial_panels = 8);

/// Integral of f over [a, inf).
///
/// `scale` marks where the bulk of the mass sits; the interval up to
/// scale * 10^upper_decades is done on a log grid and the remainder is
/// mapped onto (0, 1] with x = V t^{-1/(decay-1)}. When f decays like
/// x^{-decay} the mapped integrand is flat, so slowly decaying algebraic
/// tails cost one panel. For a == 0 the stretch below scale * 10^-lower_decades
/// is integrated on a linear grid.
struct SemiInfinite {
  double scale = 1.0;
  double decay = 3.0;
  double lower_decades = 12.0;
  double upper_decades = 4.0;
  /// Starting panels of the log grid; adaptive refinement adds more.
  std::size_t panels = 8;
  /// For a == 0: integrate the stretch below the log grid. Callers whose
  /// integrand vanishes at least linearly there can drop it.
  bool head = true;
};

Result semi_infinite(const Integrand& f, double a, const SemiInfinite& shape, const Tolerance& tol);

/// Throws QuadratureError when `r` did not converge.
double checked(const Result& r, const char* what);

}  // namespace mmshare::quad
