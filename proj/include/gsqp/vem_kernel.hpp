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

// Matrix-generic vertex exchange loop. `vem_solve` instantiates it with
// DenseSymmetricMatrix; any type with the same column interface works.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <span>

#include "gsqp/core.hpp"
#include "gsqp/vem.hpp"

namespace gsqp {

template <class M>
concept SymmetricColumnAccess = requires(const M& m, std::size_t i,
                                         std::span<const double> x,
                                         std::span<double> out) {
  { m.size() } -> std::convertible_to<std::size_t>;
  { m(i, i) } -> std::convertible_to<double>;
  { m.column(i) } -> std::convertible_to<std::span<const double>>;
  m.multiply(x, out);
  { m.frobenius_norm() } -> std::convertible_to<double>;
};

/// `x0` must already be feasible.
template <SymmetricColumnAccess M>
SolveReport vem_solve_kernel(const M& Q, std::span<const double> c,
                             const GeneralizedSimplex& set, Vector x0,
                             const VemConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto started = Clock::now();
  const std::size_t n = Q.size();
  const auto lo = set.lower();
  const auto hi = set.upper();

  SolveReport report;
  Vector x = std::move(x0);
  Vector g(n);

  auto refresh_gradient = [&] {
    Q.multiply(x, g);
    for (std::size_t i = 0; i < n; ++i) g[i] += c[i];
  };
  refresh_gradient();
  const double qnorm_scale = std::max(1.0, Q.frobenius_norm());

  std::size_t k = 0;
  for (;; ++k) {
    if (cfg.observer) cfg.observer(VemIterate{k, x, g});

    if (cfg.time_limit && (k & 63u) == 0 &&
        Clock::now() - started >= *cfg.time_limit) {
      report.termination = Termination::kTimeLimit;
      break;
    }

    const ExchangePair pair = select_exchange_pair(x, g, set, cfg.boundary_tol);
    if (pair.gap <= 0.0) {
      report.termination = Termination::kGapConverged;
      break;
    }
    bool done = false;
    switch (cfg.criterion) {
      case VemCriterion::kGapOverQNorm:
        if (pair.gap / qnorm_scale <= cfg.tol) {
          report.termination = Termination::kGapConverged;
          done = true;
        }
        break;
      case VemCriterion::kKktResidual:
        if (k % cfg.check_period == 0 &&
            kkt_residual_from_gradient(set, x, g) <= cfg.tol) {
          report.termination = Termination::kResidualConverged;
          done = true;
        }
        break;
      case VemCriterion::kUserError:
        if (k % cfg.check_period == 0 && cfg.user_error(x, g) <= cfg.tol) {
          report.termination = Termination::kUserErrorConverged;
          done = true;
        }
        break;
    }
    if (done) break;
    if (k >= cfg.max_iter) {
      report.termination = Termination::kMaxIterations;
      break;
    }

    const std::size_t s = pair.s;
    const std::size_t t = pair.t;
    const auto col_s = Q.column(s);
    const auto col_t = Q.column(t);
    const double curvature = col_s[s] + col_t[t] - 2.0 * col_s[t];
    if (!(curvature > 0.0)) {
      fail(ErrorCode::kNonPositiveCurvature,
           "vem: Q_ss + Q_tt - 2 Q_st <= 0; Q is not positive definite");
    }
    const double room_s = x[s] - lo[s];
    const double room_t = hi[t] - x[t];
    const double eta_max = std::min(room_s, room_t);
    const double eta_free = pair.gap / curvature;

    const double old_s = x[s];
    const double old_t = x[t];
    if (eta_free >= eta_max) {
      // Clipped step: the blocking coordinate lands on its bound bit-exactly.
      x[s] = room_s <= room_t ? lo[s] : old_s - eta_max;
      x[t] = room_t <= room_s ? hi[t] : old_t + eta_max;
    } else {
      x[s] = old_s - eta_free;
      x[t] = old_t + eta_free;
    }
    const double moved_s = old_s - x[s];
    const double moved_t = x[t] - old_t;
    if (moved_s == 0.0 && moved_t == 0.0) {
      report.termination = Termination::kStagnated;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += moved_t * col_t[i] - moved_s * col_s[i];
    }
    if (cfg.gradient_refresh_period > 0 &&
        (k + 1) % cfg.gradient_refresh_period == 0) {
      refresh_gradient();
    }
  }

  report.iterations = k;
  if (!cfg.skip_final_residual) {
    refresh_gradient();
    report.kkt_residual = kkt_residual_from_gradient(set, x, g);
  }
  // q(x) = 1/2 x^T (g + c) with g = Qx + c.
  double obj = 0.0;
  for (std::size_t i = 0; i < n; ++i) obj += x[i] * (g[i] + c[i]);
  report.objective = 0.5 * obj;
  report.x = std::move(x);
  report.wall_time = Clock::now() - started;
  return report;
}

}  // namespace gsqp
