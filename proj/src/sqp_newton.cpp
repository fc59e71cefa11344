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

#include "gsqp/sqp_newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "gsqp/proj.hpp"
#include "gsqp/vem.hpp"

namespace gsqp {
namespace {

using Clock = std::chrono::steady_clock;

bool in_open_unit(double v) { return v > 0.0 && v < 1.0; }

// q_k(z) = 1/2 d^T (grad q_k(z) + grad f(x^k)) with d = z - x^k, since
// grad q_k(z) = H d + grad f(x^k).
struct ModelValue {
  double value = 0.0;
  // Rounding bound on `value`; values at or below it count as nonpositive.
  double noise = 0.0;
};

ModelValue model_value(std::span<const double> z, std::span<const double> xk,
                       std::span<const double> model_grad,
                       std::span<const double> fgrad) {
  // Noise: drift of the running model gradient, O(n eps max|g|) per entry,
  // and the rounding of e^T z = b, which the multiplier part of g scales.
  double q = 0.0, step1 = 0.0, mass = 0.0, gmax = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double d = z[i] - xk[i];
    q += d * (model_grad[i] + fgrad[i]);
    step1 += std::abs(d);
    mass += std::abs(z[i]) + std::abs(xk[i]);
    gmax = std::max({gmax, std::abs(model_grad[i]), std::abs(fgrad[i])});
  }
  const double n = static_cast<double>(z.size());
  const double eps = std::numeric_limits<double>::epsilon();
  return {0.5 * q, eps * gmax * (8.0 * n * step1 + 4.0 * mass)};
}

bool nonpositive(const ModelValue& m) { return m.value <= m.noise; }

double projected_residual(std::span<const double> z,
                          std::span<const double> grad,
                          const GeneralizedSimplex& set) {
  Vector trial(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) trial[i] = z[i] - grad[i];
  const Vector p = proj_generalized_simplex(trial, set);
  return distance2(z, p);
}

struct InnerResult {
  Vector z;
  double model_value = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool at_floor = false;
};

InnerResult solve_inner(const DenseSymmetricMatrix& V, double eps,
                        std::span<const double> xk,
                        std::span<const double> fgrad,
                        std::span<const double> start,
                        const GeneralizedSimplex& set, double inner_tol,
                        const SqpConfig& cfg) {
  const std::size_t n = xk.size();
  DenseSymmetricMatrix H = V.shifted(eps);
  // grad q_k(z) = H z + c_k with c_k = grad f(x^k) - H x^k.
  Vector ck = H.multiply(xk);
  for (std::size_t i = 0; i < n; ++i) ck[i] = fgrad[i] - ck[i];
  const QpProblem qp(std::move(H), std::move(ck), set);

  VemConfig vcfg;
  vcfg.criterion = VemCriterion::kUserError;
  vcfg.tol = inner_tol;
  vcfg.max_iter = cfg.inner_max_iter;
  vcfg.check_period = cfg.inner_check_period;
  vcfg.skip_final_residual = true;
  vcfg.user_error = [&](std::span<const double> z, std::span<const double> g) {
    if (!nonpositive(model_value(z, xk, g, fgrad))) {
      return std::numeric_limits<double>::infinity();
    }
    return projected_residual(z, g, set);
  };

  Vector z0(start.begin(), start.end());
  const bool feasible = set.contains(z0);
  SolveReport rep = vem_solve(qp, {std::move(z0), !feasible}, vcfg);

  InnerResult out;
  const Vector g = qp.gradient(rep.x);
  const ModelValue q = model_value(rep.x, xk, g, fgrad);
  out.model_value = q.value;
  out.residual = projected_residual(rep.x, g, set);
  out.iterations = rep.iterations;
  // Stagnated: the residual is at its floating-point floor.
  const bool at_floor = rep.termination == Termination::kStagnated;
  if (!nonpositive(q) || (out.residual > inner_tol && !at_floor)) {
    std::ostringstream os;
    os << "sqp: inner solver stopped (" << to_string(rep.termination)
       << ") before the inner criteria held: q_k = " << out.model_value
       << ", residual = " << out.residual << " > " << inner_tol;
    fail(ErrorCode::kInnerSolverStall, os.str());
  }
  out.at_floor = at_floor && out.residual > inner_tol;
  out.z = std::move(rep.x);
  return out;
}

}  // namespace

void SqpConfig::validate() const {
  if (!(mu > 0.0 && mu < 0.5)) fail(ErrorCode::kInvalidArgument, "SqpConfig: mu");
  if (!in_open_unit(gamma) || !in_open_unit(rho) || !in_open_unit(delta) ||
      !in_open_unit(tau1) || !in_open_unit(tau2)) {
    fail(ErrorCode::kInvalidArgument,
         "SqpConfig: gamma, rho, delta, tau1, tau2 must lie in (0, 1)");
  }
  if (!(outer_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "SqpConfig: outer_tol");
  if (inner_max_iter == 0 || inner_check_period == 0) {
    fail(ErrorCode::kInvalidArgument, "SqpConfig: inner budget");
  }
}

Vector natural_map(const Sc1Objective& objective, std::span<const double> x,
                   const GeneralizedSimplex& set) {
  const Vector g = objective.gradient(x);
  Vector trial(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - g[i];
  const Vector p = proj_generalized_simplex(trial, set);
  Vector G(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) G[i] = x[i] - p[i];
  return G;
}

SolveReport sqp_solve(const Sc1Objective& objective,
                      std::span<const double> x0_tilde,
                      const GeneralizedSimplex& set, const SqpConfig& cfg,
                      SqpTrace* trace) {
  cfg.validate();
  const auto started = Clock::now();
  set.require_assumption();
  const std::size_t n = set.size();
  if (x0_tilde.size() != n || objective.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "sqp_solve: sizes disagree");
  }
  if (trace) *trace = {};

  Vector x = proj_generalized_simplex(x0_tilde, set);
  Vector x_tilde(x0_tilde.begin(), x0_tilde.end());
  double G_norm = norm2(natural_map(objective, x, set));
  double f_pre = G_norm;

  SolveReport report;
  std::size_t k = 0;
  for (;; ++k) {
    if (G_norm <= cfg.outer_tol) {
      report.termination = Termination::kResidualConverged;
      break;
    }
    if (k >= cfg.max_outer) {
      report.termination = Termination::kMaxIterations;
      break;
    }
    SqpStep step;
    step.natural_residual = G_norm;
    step.eps = cfg.tau1 * std::min(cfg.tau2, G_norm);
    step.rho = std::min(cfg.rho, G_norm);
    const double inner_tol = step.rho * G_norm;

    const DenseSymmetricMatrix V = objective.hessian_element(x);
    const Vector fgrad = objective.gradient(x);

    InnerResult inner;
    for (int inflation = 0;; ++inflation) {
      try {
        inner = solve_inner(V, step.eps, x, fgrad, x_tilde, set, inner_tol, cfg);
        break;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonPositiveCurvature ||
            inflation >= cfg.max_eps_inflations) {
          throw;
        }
        step.eps *= 10.0;
      }
    }
    step.model_value = inner.model_value;
    step.inner_residual = inner.residual;
    step.inner_iterations = inner.iterations;
    step.inner_at_floor = inner.at_floor;
    x_tilde = inner.z;

    const double G_trial = norm2(natural_map(objective, x_tilde, set));
    if (G_trial <= cfg.gamma * f_pre) {
      step.full_step = true;
      x = x_tilde;
      G_norm = G_trial;
      f_pre = G_trial;
    } else {
      Vector dx(n);
      for (std::size_t i = 0; i < n; ++i) dx[i] = x_tilde[i] - x[i];
      const double fx = objective.value(x);
      const double slope = accurate_dot(fgrad, dx);
      Vector trial(n);
      bool accepted = false;
      double alpha = 1.0;
      for (std::size_t m = 0; m <= cfg.max_backtracks; ++m) {
        for (std::size_t i = 0; i < n; ++i) trial[i] = x[i] + alpha * dx[i];
        if (objective.value(trial) <= fx + cfg.mu * alpha * slope) {
          step.backtracks = m;
          accepted = true;
          break;
        }
        alpha *= cfg.delta;
      }
      if (!accepted) {
        fail(ErrorCode::kLineSearchFail,
             "sqp: Armijo backtracking exhausted the reduction budget");
      }
      x.swap(trial);
      G_norm = norm2(natural_map(objective, x, set));
      if (G_norm <= cfg.gamma * f_pre) f_pre = G_norm;
    }
    step.f_pre = f_pre;
    if (trace) trace->steps.push_back(step);
  }

  report.iterations = k;
  report.objective = objective.value(x);
  report.kkt_residual = G_norm;
  report.x = std::move(x);
  report.wall_time = Clock::now() - started;
  if (trace) trace->final_natural_residual = G_norm;
  return report;
}

}  // namespace gsqp
