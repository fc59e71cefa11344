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

#include "gsqp/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsqp/lp_oracle.hpp"
#include "gsqp/proj.hpp"
#include "gsqp/rng.hpp"

namespace gsqp {
namespace {

using Clock = std::chrono::steady_clock;

Vector feasible_start(const QpProblem& problem, const StartPoint& start) {
  const auto& set = problem.feasible_set;
  set.require_assumption();
  if (start.point.size() != problem.size()) {
    fail(ErrorCode::kDimensionMismatch, "baseline: start point size");
  }
  if (start.project) return proj_generalized_simplex(start.point, set);
  if (!set.contains(start.point)) {
    fail(ErrorCode::kInvalidArgument, "baseline: start point is infeasible");
  }
  return start.point;
}

double resolve_lipschitz(const QpProblem& problem, const BaselineConfig& cfg) {
  if (cfg.lipschitz > 0.0) return cfg.lipschitz;
  if (cfg.lipschitz < 0.0) {
    fail(ErrorCode::kInvalidArgument, "BaselineConfig: lipschitz < 0");
  }
  return estimate_lipschitz(problem.Q);
}

bool out_of_time(const BaselineConfig& cfg, Clock::time_point started) {
  return cfg.time_limit && Clock::now() - started >= *cfg.time_limit;
}

void finish(const QpProblem& problem, SolveReport& report, Vector x,
            Clock::time_point started) {
  const Vector g = problem.gradient(x);
  report.kkt_residual = kkt_residual_from_gradient(problem.feasible_set, x, g);
  double obj = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) obj += x[i] * (g[i] + problem.c[i]);
  report.objective = 0.5 * obj;
  report.x = std::move(x);
  report.wall_time = Clock::now() - started;
}

}  // namespace

double estimate_lipschitz(const DenseSymmetricMatrix& Q, int iterations,
                          double safety) {
  const std::size_t n = Q.size();
  Rng rng(0, streams::kPowerIteration);
  Vector v(n), w(n);
  for (double& e : v) e = rng.normal();
  double lambda = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double nv = norm2(v);
    if (nv == 0.0) break;
    for (double& e : v) e /= nv;
    Q.multiply(v, w);
    lambda = accurate_dot(v, w);
    v.swap(w);
  }
  return safety * lambda;
}

SolveReport pg_solve(const QpProblem& problem, const StartPoint& start,
                     const BaselineConfig& cfg) {
  const auto started = Clock::now();
  const auto& set = problem.feasible_set;
  Vector x = feasible_start(problem, start);
  const double step = 1.0 / resolve_lipschitz(problem, cfg);
  const std::size_t n = x.size();

  SolveReport report;
  Vector g(n), trial(n);
  std::size_t k = 0;
  for (;; ++k) {
    problem.Q.multiply(x, g);
    for (std::size_t i = 0; i < n; ++i) g[i] += problem.c[i];
    if (cfg.observer) {
      cfg.observer({k, x, g, std::numeric_limits<double>::quiet_NaN()});
    }
    if (kkt_residual_from_gradient(set, x, g) <= cfg.tol) {
      report.termination = Termination::kResidualConverged;
      break;
    }
    if (k >= cfg.max_iter) {
      report.termination = Termination::kMaxIterations;
      break;
    }
    if (out_of_time(cfg, started)) {
      report.termination = Termination::kTimeLimit;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] - step * g[i];
    Vector next = proj_generalized_simplex(trial, set);
    const double move = distance2(next, x);
    x.swap(next);
    if (move <= cfg.tol) {
      ++k;
      report.termination = Termination::kResidualConverged;
      break;
    }
  }
  report.iterations = k;
  finish(problem, report, std::move(x), started);
  return report;
}

SolveReport fista_solve(const QpProblem& problem, const StartPoint& start,
                        const BaselineConfig& cfg) {
  const auto started = Clock::now();
  const auto& set = problem.feasible_set;
  Vector x_prev = feasible_start(problem, start);
  const double step = 1.0 / resolve_lipschitz(problem, cfg);
  const std::size_t n = x_prev.size();

  // Q y is carried by linearity so that each iteration costs one product.
  Vector qx_prev = problem.Q.multiply(x_prev);
  Vector y = x_prev;
  Vector qy = qx_prev;
  Vector x(n), qx(n), g(n), trial(n);
  double t = 1.0;

  SolveReport report;
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= cfg.max_iter) {
      report.termination = Termination::kMaxIterations;
      break;
    }
    if (out_of_time(cfg, started)) {
      report.termination = Termination::kTimeLimit;
      break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      trial[i] = y[i] - step * (qy[i] + problem.c[i]);
    }
    x = proj_generalized_simplex(trial, set);
    problem.Q.multiply(x, qx);
    for (std::size_t i = 0; i < n; ++i) g[i] = qx[i] + problem.c[i];
    if (cfg.observer) {
      cfg.observer({k, x, g, std::numeric_limits<double>::quiet_NaN()});
    }
    const double move = distance2(x, x_prev);
    if (move <= cfg.tol || kkt_residual_from_gradient(set, x, g) <= cfg.tol) {
      ++k;
      x_prev.swap(x);
      report.termination = Termination::kResidualConverged;
      break;
    }
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double beta = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = x[i] + beta * (x[i] - x_prev[i]);
      qy[i] = qx[i] + beta * (qx[i] - qx_prev[i]);
    }
    x_prev.swap(x);
    qx_prev.swap(qx);
    t = t_next;
  }
  report.iterations = k;
  finish(problem, report, std::move(x_prev), started);
  return report;
}

SolveReport fw_solve(const QpProblem& problem, const StartPoint& start,
                     const BaselineConfig& cfg) {
  const auto started = Clock::now();
  const auto& set = problem.feasible_set;
  const auto& Q = problem.Q;
  Vector x = feasible_start(problem, start);
  const std::size_t n = x.size();
  constexpr std::size_t kRefreshPeriod = 10'000;

  Vector g = problem.gradient(x);
  // Q v for the previous vertex; successive vertices usually differ in a
  // handful of coordinates, so Q v is patched column by column.
  Vector v_prev, qv(n), qd(n);
  std::vector<std::size_t> changed;

  SolveReport report;
  std::size_t k = 0;
  for (;; ++k) {
    if (k >= cfg.max_iter) {
      report.termination = Termination::kMaxIterations;
      break;
    }
    if (out_of_time(cfg, started)) {
      report.termination = Termination::kTimeLimit;
      break;
    }
    const LpVertex lp = lp_minimize(g, set);
    const Vector& v = lp.vertex;
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += g[i] * (x[i] - v[i]);
    if (cfg.observer) cfg.observer({k, x, g, gap});
    if (cfg.fw_gap_tol > 0.0 && gap <= cfg.fw_gap_tol) {
      report.termination = Termination::kUserErrorConverged;
      break;
    }

    changed.clear();
    if (!v_prev.empty()) {
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] != v_prev[i]) changed.push_back(i);
      }
    }
    if (v_prev.empty() || changed.size() > n / 4) {
      Q.multiply(v, qv);
    } else {
      for (std::size_t i : changed) {
        const double dv = v[i] - v_prev[i];
        const auto col = Q.column(i);
        for (std::size_t j = 0; j < n; ++j) qv[j] += dv * col[j];
      }
    }
    v_prev = v;

    double alpha;
    if (cfg.fw_step == FwStepRule::kHarmonic) {
      alpha = 1.0 / (static_cast<double>(k) + 2.0);
    } else {
      // Q d = Q v - Q x with Q x = g - c.
      double curvature = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        qd[i] = qv[i] - (g[i] - problem.c[i]);
        curvature += (v[i] - x[i]) * qd[i];
      }
      alpha = curvature > 0.0 ? std::clamp(gap / curvature, 0.0, 1.0) : 1.0;
    }
    double move2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = alpha * (v[i] - x[i]);
      move2 += d * d;
      x[i] += d;
      g[i] = (1.0 - alpha) * g[i] + alpha * (qv[i] + problem.c[i]);
    }
    if ((k + 1) % kRefreshPeriod == 0) g = problem.gradient(x);
    if (cfg.fw_step == FwStepRule::kHarmonic &&
        std::sqrt(move2) <= cfg.fw_move_tol) {
      ++k;
      report.termination = Termination::kResidualConverged;
      break;
    }
    if (move2 == 0.0 && alpha == 0.0) {
      report.termination = Termination::kStagnated;
      break;
    }
  }
  report.iterations = k;
  finish(problem, report, std::move(x), started);
  return report;
}

}  // namespace gsqp
