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

// Vertex exchange method for min 1/2 x^T Q x + c^T x over F.
//
// Each iteration moves mass eta from the coordinate s with the largest
// gradient among those above their lower bound to the coordinate t with the
// smallest gradient among those below their upper bound. The step is the
// exact minimizer of q along e_t - e_s clipped to the feasible interval, and
// the gradient is updated with the two columns Q_{:,s}, Q_{:,t} only.

#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "gsqp/core.hpp"

namespace gsqp {

enum class VemCriterion {
  /// (g_s - g_t) / max(1, ||Q||_F) <= tol
  kGapOverQNorm,
  /// ||x - Proj_F(x - g)|| / (1 + ||x||) <= tol
  kKktResidual,
  /// user_error(x, g) <= tol
  kUserError,
};

/// Snapshot handed to observers at the top of every iteration.
struct VemIterate {
  std::size_t k = 0;
  std::span<const double> x;
  std::span<const double> g;
};

using VemUserError =
    std::function<double(std::span<const double> x, std::span<const double> g)>;
using VemObserver = std::function<void(const VemIterate&)>;

struct VemConfig {
  double tol = 1e-12;
  std::size_t max_iter = 1'000'000;
  VemCriterion criterion = VemCriterion::kGapOverQNorm;
  VemUserError user_error;
  /// Residual and user criteria are evaluated every `check_period` iterations.
  std::size_t check_period = 1;
  /// Full recompute g = c + Q x every this many iterations.
  std::size_t gradient_refresh_period = 100'000;
  /// Boundary slack for the candidate sets of the exchange pair.
  double boundary_tol = 1e-14;
  std::optional<std::chrono::duration<double>> time_limit;
  /// Skip the O(n^2) fresh objective / residual in the returned report.
  bool skip_final_residual = false;
  VemObserver observer;

  void validate() const;
};

/// Starting point: either already feasible, or projected onto F first.
struct StartPoint {
  Vector point;
  bool project = true;

  static StartPoint feasible(Vector x) { return {std::move(x), false}; }
  static StartPoint auto_project(Vector x) { return {std::move(x), true}; }
};

struct ExchangePair {
  std::size_t s = 0;
  std::size_t t = 0;
  double gap = 0.0;  // g_s - g_t
};

/// s = argmax{g_i : x_i > l_i + boundary_tol},
/// t = argmin{g_i : x_i < u_i - boundary_tol}, ties to the smallest index.
/// Throws kDegenerate when either candidate set is empty.
ExchangePair select_exchange_pair(std::span<const double> x,
                                  std::span<const double> g,
                                  const GeneralizedSimplex& set,
                                  double boundary_tol = 1e-14);

struct StepSize {
  double eta = 0.0;
  double eta_max = 0.0;
};

/// eta = min(eta_max, (g_s - g_t) / (Q_ss + Q_tt - 2 Q_st)) with
/// eta_max = min(x_s - l_s, u_t - x_t). Throws kNonPositiveCurvature.
StepSize optimal_step(const DenseSymmetricMatrix& Q, std::span<const double> x,
                      std::span<const double> g, std::size_t s, std::size_t t,
                      const GeneralizedSimplex& set);

SolveReport vem_solve(const QpProblem& problem, const StartPoint& start,
                      const VemConfig& cfg = {});

}  // namespace gsqp
