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

// Inexact projected Newton method for min f(x) over F with f
// self-concordant. The Newton model
//
//   q_k(x) = 1/2 (x - x^k)^T H_k (x - x^k) + grad f(x^k)^T (x - x^k)
//
// is minimized over F until max_{v in F} grad q_k(x~)^T (x~ - v) <= xi_k,
// a certificate evaluated exactly with the knapsack oracle. Full steps are
// taken inside the quadratic-convergence region, damped steps otherwise.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gsqp/core.hpp"
#include "gsqp/objective.hpp"

namespace gsqp {

/// h(tau) = tau (1 - 2 tau + 2 tau^2) / ((1 - 2 tau)(1 - tau)^2 - tau^2).
/// Throws kDomainError for tau < 0 or a nonpositive denominator.
double h_func(double tau);
/// Root of the denominator of h, about 0.35; h is increasing on [0, root).
double h_domain_end();
/// tau in [0, h_domain_end()) with |h(tau) - v| <= tol. Requires v >= 0.
double h_inverse(double v, double tol = 1e-14);
/// tau - log(1 + tau); throws kDomainError for tau <= -1.
double omega(double tau);
/// sqrt(d^T H d). Rounding below zero is clamped; values below
/// -1e-10 ||d||^2 ||H||_F throw kNegativeQuadraticForm.
double local_norm(const DenseSymmetricMatrix& H, std::span<const double> d);

enum class PnSubsolver {
  kVem,
  /// Frank-Wolfe with exact line search.
  kFrankWolfe,
};

struct PnConfig {
  double beta = 0.04;   // (0, 1/20)
  double sigma = 0.5;   // (0, 1)
  double C = 25.0;      // > 1
  double C1 = 0.25;     // (0, 1/2)
  double delta = 0.9;   // (0, 1)
  double lambda_stop = 1e-3;
  std::size_t max_outer = 500;
  PnSubsolver subsolver = PnSubsolver::kVem;
  std::size_t inner_max_iter = 1'000'000;
  /// VEM evaluates the certificate every this many exchanges.
  std::size_t inner_check_period = 10;

  /// Checks the ranges and both coupling inequalities
  ///   1/(C(1-beta)) + beta/((1-2beta)(1-beta)^2) <= sigma,
  ///   1/C + 1/(1-2beta) <= 2.
  void validate() const;
};

struct PnStep {
  double lambda = 0.0;  // lambda^k after the update
  double xi = 0.0;      // xi^k used for this inner solve
  double gamma = 0.0;   // ||dx||_{x^k}
  double certificate = 0.0;
  bool full_step = false;
  double step_size = 1.0;
  std::size_t inner_iterations = 0;
  double inner_seconds = 0.0;
};

/// Filled as the solve progresses. If the subsolver fails, the timings and
/// final_lambda describe the partial run before the error propagates.
struct PnTrace {
  std::vector<PnStep> steps;
  double h_inverse_beta = 0.0;
  double final_lambda = 0.0;
  /// Time spent inside the QP subsolver.
  double qp_seconds = 0.0;
  /// Total wall time of pn_solve.
  double total_seconds = 0.0;
};

/// x0 must lie in dom(f) and in F. SolveReport::iterations counts outer
/// steps. Throws kDomainViolation when an iterate leaves dom(f) and
/// kInnerSolverStall when the certificate is not reached in inner_max_iter.
SolveReport pn_solve(const SelfConcordantObjective& objective,
                     std::span<const double> x0, const GeneralizedSimplex& set,
                     const PnConfig& cfg = {}, PnTrace* trace = nullptr);

}  // namespace gsqp
