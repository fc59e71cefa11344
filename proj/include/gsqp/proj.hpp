// Copyright 2026 The gsqp Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Euclidean projection onto the box C(l, u) and onto the generalized simplex
// F. The simplex projection works on the scalar dual
//
//   phi(y) = 1/2 ||P(y e + xbar)||^2 - b y + sigma_C(y e + xbar - P(y e + xbar))
//
// with P the box clamp and sigma_C the support function of C. Its derivative
// phi'(y) = e^T P(y e + xbar) - b is monotone and piecewise linear, and
// Proj_F(xbar) = P(y* e + xbar) at any root y*.

#pragma once

#include <cstddef>
#include <span>

#include "gsqp/core.hpp"

namespace gsqp {

struct SsnConfig {
  /// Stop when |phi'(y)| <= grad_tol * max(1, |b|).
  double grad_tol = 1e-12;
  int max_iter = 50;
  double delta = 0.5;  // backtracking factor
  double mu = 0.25;    // Armijo constant
  double tau1 = 0.5;
  double tau2 = 0.5;
  double y0 = 0.0;
  /// Replace y0 by (b - e^T proj_box(xbar)) / n.
  bool warm_start = false;
  /// Backtracks before the bisection safeguard takes over.
  int max_backtracks = 60;

  /// Throws kInvalidArgument when a parameter is out of range.
  void validate() const;
};

struct SsnTrace {
  int iterations = 0;
  Vector y_history;  // y^0, y^1, ..., final y
  double final_phi_prime = 0.0;
  bool used_safeguard = false;
};

struct SsnResult {
  double y = 0.0;
  SsnTrace trace;
};

/// Elementwise clamp. Throws kDimensionMismatch.
Vector proj_box(std::span<const double> point, std::span<const double> lower,
                std::span<const double> upper);
void proj_box_into(std::span<const double> point, std::span<const double> lower,
                   std::span<const double> upper, std::span<double> out);

double phi_value(double y, std::span<const double> xbar,
                 const GeneralizedSimplex& set);
double phi_prime(double y, std::span<const double> xbar,
                 const GeneralizedSimplex& set);
/// |{i : l_i <= y + xbar_i <= u_i}| (closed intervals).
std::size_t generalized_hessian_scalar(double y, std::span<const double> xbar,
                                       const GeneralizedSimplex& set);

/// phi(y + step) - phi(y) - step * phi'(y), evaluated per coordinate in
/// closed form so that it never cancels. Always >= 0.
double phi_curvature_remainder(double y, double step,
                               std::span<const double> xbar,
                               const GeneralizedSimplex& set);

/// Semismooth Newton on phi' = 0 with the bisection safeguard.
/// Throws kInfeasible if the set violates e^T l < b < e^T u.
SsnResult ssn_solve(std::span<const double> xbar, const GeneralizedSimplex& set,
                    const SsnConfig& cfg = {});

/// Bracketing by doubling from 0, then bisection on phi'. Used as the SSN
/// safeguard.
double bisection_root(std::span<const double> xbar,
                      const GeneralizedSimplex& set, double tol_abs);

Vector proj_generalized_simplex(std::span<const double> xbar,
                                const GeneralizedSimplex& set,
                                const SsnConfig& cfg = {});
/// Same, also returning the dual trace.
Vector proj_generalized_simplex(std::span<const double> xbar,
                                const GeneralizedSimplex& set,
                                const SsnConfig& cfg, SsnResult* result);

}  // namespace gsqp
