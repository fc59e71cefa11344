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

// First-order reference solvers: projected gradient, FISTA and Frank-Wolfe.

#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "gsqp/core.hpp"
#include "gsqp/vem.hpp"

namespace gsqp {

enum class FwStepRule {
  /// 1 / (k + 2)
  kHarmonic,
  /// exact minimizer of q on the segment [x, v]
  kExactLineSearch,
};

struct BaselineIterate {
  std::size_t k = 0;
  std::span<const double> x;
  std::span<const double> g;
  /// Frank-Wolfe gap g^T (x - v); NaN for PG / FISTA.
  double fw_gap = 0.0;
};

struct BaselineConfig {
  /// PG / FISTA: stop on ||x+ - x|| <= tol or natural residual <= tol.
  double tol = 1e-8;
  std::size_t max_iter = 1'000'000;
  std::optional<std::chrono::duration<double>> time_limit =
      std::chrono::duration<double>(300.0);
  /// Largest eigenvalue of Q. Zero means "estimate by power iteration".
  double lipschitz = 0.0;
  /// Economical mode evaluates no objective values inside the loop.
  bool economical = true;

  FwStepRule fw_step = FwStepRule::kHarmonic;
  /// FW stops on ||x+ - x|| <= fw_move_tol (harmonic rule only).
  double fw_move_tol = 1e-3;
  /// FW stops on g^T (x - v) <= fw_gap_tol when positive.
  double fw_gap_tol = 0.0;

  std::function<void(const BaselineIterate&)> observer;
};

/// 20 power iterations from a fixed pseudo-random start, times 1.01.
double estimate_lipschitz(const DenseSymmetricMatrix& Q, int iterations = 20,
                          double safety = 1.01);

SolveReport pg_solve(const QpProblem& problem, const StartPoint& start,
                     const BaselineConfig& cfg = {});
SolveReport fista_solve(const QpProblem& problem, const StartPoint& start,
                        const BaselineConfig& cfg = {});
SolveReport fw_solve(const QpProblem& problem, const StartPoint& start,
                     const BaselineConfig& cfg = {});

}  // namespace gsqp
