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

// Inexact SQP Newton method for min f(x) over F with f SC^1.
//
// Each outer step solves, with the vertex exchange method warm-started at
// the previous inner solution,
//
//   min_x q_k(x) = 1/2 (x - x^k)^T (V_k + eps_k I)(x - x^k)
//                  + grad f(x^k)^T (x - x^k)   s.t. x in F
//
// until q_k(x~) <= 0 and ||x~ - Proj_F(x~ - grad q_k(x~))|| <= rho_k ||G(x^k)||,
// where G(x) = x - Proj_F(x - grad f(x)) is the natural map.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gsqp/core.hpp"
#include "gsqp/objective.hpp"

namespace gsqp {

/// x - Proj_F(x - grad f(x)).
Vector natural_map(const Sc1Objective& objective, std::span<const double> x,
                   const GeneralizedSimplex& set);

struct SqpConfig {
  double mu = 0.25;     // Armijo constant, (0, 1/2)
  double gamma = 0.5;   // full-step acceptance factor
  double rho = 0.5;     // inner residual factor
  double delta = 0.5;   // backtracking factor
  double tau1 = 0.5;    // regularization eps_k = tau1 min(tau2, ||G||)
  double tau2 = 0.5;
  double outer_tol = 1e-8;  // stop on ||G(x^k)|| <= outer_tol
  std::size_t max_outer = 200;
  std::size_t max_backtracks = 60;
  /// Inner VEM budget and the period of the inner-criteria check.
  std::size_t inner_max_iter = 1'000'000;
  std::size_t inner_check_period = 50;
  /// eps_k is multiplied by 10 at most this many times per outer step when
  /// the inner solver meets non-positive curvature.
  int max_eps_inflations = 6;

  void validate() const;
};

struct SqpStep {
  double natural_residual = 0.0;  // ||G(x^k)||
  double eps = 0.0;
  double rho = 0.0;
  double model_value = 0.0;     // q_k(x~^{k+1})
  double inner_residual = 0.0;  // ||x~ - Proj_F(x~ - grad q_k(x~))||
  std::size_t inner_iterations = 0;
  /// The inner VEM stagnated above the residual target, which happens once
  /// rho ||G|| is below rounding level. The point is accepted.
  bool inner_at_floor = false;
  bool full_step = false;
  std::size_t backtracks = 0;
  double f_pre = 0.0;  // after the update
};

struct SqpTrace {
  std::vector<SqpStep> steps;
  double final_natural_residual = 0.0;
};

/// Starts from x^0 = Proj_F(x0_tilde). SolveReport::iterations counts outer
/// steps and kkt_residual holds ||G|| at the returned point. Throws
/// kInnerSolverStall when the inner criteria are not met within
/// inner_max_iter and kLineSearchFail after max_backtracks reductions.
SolveReport sqp_solve(const Sc1Objective& objective,
                      std::span<const double> x0_tilde,
                      const GeneralizedSimplex& set, const SqpConfig& cfg = {},
                      SqpTrace* trace = nullptr);

}  // namespace gsqp
