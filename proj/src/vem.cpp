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

#include "gsqp/vem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsqp/proj.hpp"
#include "gsqp/vem_kernel.hpp"

namespace gsqp {

void VemConfig::validate() const {
  if (!(tol > 0.0)) fail(ErrorCode::kInvalidArgument, "VemConfig: tol <= 0");
  if (max_iter < 1) fail(ErrorCode::kInvalidArgument, "VemConfig: max_iter < 1");
  if (check_period < 1) {
    fail(ErrorCode::kInvalidArgument, "VemConfig: check_period < 1");
  }
  if (!(boundary_tol >= 0.0)) {
    fail(ErrorCode::kInvalidArgument, "VemConfig: boundary_tol < 0");
  }
  if (criterion == VemCriterion::kUserError && !user_error) {
    fail(ErrorCode::kInvalidArgument, "VemConfig: user criterion without callback");
  }
}

ExchangePair select_exchange_pair(std::span<const double> x,
                                  std::span<const double> g,
                                  const GeneralizedSimplex& set,
                                  double boundary_tol) {
  const auto lo = set.lower();
  const auto hi = set.upper();
  const std::size_t n = x.size();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t s = kNone;
  std::size_t t = kNone;
  double gs = -std::numeric_limits<double>::infinity();
  double gt = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    // Strict comparisons keep the smallest index on ties.
    if (x[i] > lo[i] + boundary_tol && (s == kNone || g[i] > gs)) {
      s = i;
      gs = g[i];
    }
    if (x[i] < hi[i] - boundary_tol && (t == kNone || g[i] < gt)) {
      t = i;
      gt = g[i];
    }
  }
  if (s == kNone || t == kNone) {
    fail(ErrorCode::kDegenerate,
         "select_exchange_pair: empty candidate set (iterate at a vertex of a "
         "degenerate set, or feasibility drift)");
  }
  return {s, t, gs - gt};
}

StepSize optimal_step(const DenseSymmetricMatrix& Q, std::span<const double> x,
                      std::span<const double> g, std::size_t s, std::size_t t,
                      const GeneralizedSimplex& set) {
  const double curvature = Q(s, s) + Q(t, t) - 2.0 * Q(s, t);
  if (!(curvature > 0.0)) {
    fail(ErrorCode::kNonPositiveCurvature,
         "optimal_step: Q_ss + Q_tt - 2 Q_st <= 0");
  }
  StepSize out;
  out.eta_max = std::min(x[s] - set.lower()[s], set.upper()[t] - x[t]);
  out.eta = std::min(out.eta_max, (g[s] - g[t]) / curvature);
  return out;
}

SolveReport vem_solve(const QpProblem& problem, const StartPoint& start,
                      const VemConfig& cfg) {
  cfg.validate();
  const auto& set = problem.feasible_set;
  set.require_assumption();
  if (start.point.size() != problem.size()) {
    fail(ErrorCode::kDimensionMismatch, "vem_solve: start point size");
  }
  Vector x0;
  if (start.project) {
    x0 = proj_generalized_simplex(start.point, set);
  } else {
    if (!set.contains(start.point)) {
      fail(ErrorCode::kInvalidArgument, "vem_solve: start point is infeasible");
    }
    x0 = start.point;
  }
  return vem_solve_kernel(problem.Q, problem.c, set, std::move(x0), cfg);
}

}  // namespace gsqp
