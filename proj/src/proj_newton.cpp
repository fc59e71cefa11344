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

#include "gsqp/proj_newton.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "gsqp/baselines.hpp"
#include "gsqp/lp_oracle.hpp"
#include "gsqp/vem.hpp"

namespace gsqp {
namespace {

using Clock = std::chrono::steady_clock;

double h_denominator(double t) {
  return (1.0 - 2.0 * t) * (1.0 - t) * (1.0 - t) - t * t;
}

double h_derivative(double t) {
  const double num = t * (1.0 - 2.0 * t + 2.0 * t * t);
  const double dnum = 1.0 - 4.0 * t + 6.0 * t * t;
  const double den = h_denominator(t);
  const double dden =
      -2.0 * (1.0 - t) * (1.0 - t) - 2.0 * (1.0 - 2.0 * t) * (1.0 - t) - 2.0 * t;
  return (dnum * den - num * dden) / (den * den);
}

struct InnerOutcome {
  Vector z;
  double certificate = 0.0;
  std::size_t iterations = 0;
};

InnerOutcome solve_model(const DenseSymmetricMatrix& H,
                         std::span<const double> xk,
                         std::span<const double> fgrad, Vector start,
                         const GeneralizedSimplex& set, double xi,
                         const PnConfig& cfg) {
  const std::size_t n = xk.size();
  Vector ck = H.multiply(xk);
  for (std::size_t i = 0; i < n; ++i) ck[i] = fgrad[i] - ck[i];
  const QpProblem qp(H, std::move(ck), set);

  InnerOutcome out;
  out.z = std::move(start);
  // The solvers test the certificate on their running gradient; it is
  // re-evaluated from scratch here and the solve resumed if drift let a
  // borderline point through.
  constexpr int kMaxResumes = 3;
  for (int attempt = 0;; ++attempt) {
    SolveReport rep;
    if (cfg.subsolver == PnSubsolver::kVem) {
      VemConfig vcfg;
      vcfg.criterion = VemCriterion::kUserError;
      vcfg.tol = xi;
      vcfg.max_iter = cfg.inner_max_iter;
      vcfg.check_period = cfg.inner_check_period;
      vcfg.skip_final_residual = true;
      vcfg.user_error = [&](std::span<const double> z,
                            std::span<const double> g) {
        return linear_gap(g, z, set);
      };
      rep = vem_solve(qp, StartPoint::feasible(std::move(out.z)), vcfg);
    } else {
      BaselineConfig fcfg;
      fcfg.fw_step = FwStepRule::kExactLineSearch;
      fcfg.fw_gap_tol = xi;
      fcfg.max_iter = cfg.inner_max_iter;
      fcfg.time_limit.reset();
      rep = fw_solve(qp, StartPoint::feasible(std::move(out.z)), fcfg);
    }
    out.iterations += rep.iterations;
    out.z = std::move(rep.x);
    out.certificate = linear_gap(qp.gradient(out.z), out.z, set);
    if (out.certificate <= xi) return out;
    if (rep.termination == Termination::kMaxIterations ||
        rep.termination == Termination::kTimeLimit || attempt >= kMaxResumes) {
      std::ostringstream os;
      os << "pn: subsolver stopped (" << to_string(rep.termination)
         << ") with certificate " << out.certificate << " > xi = " << xi;
      fail(ErrorCode::kInnerSolverStall, os.str());
    }
  }
}

}  // namespace

double h_func(double tau) {
  if (!(tau >= 0.0)) fail(ErrorCode::kDomainError, "h: tau < 0");
  const double den = h_denominator(tau);
  if (!(den > 0.0)) fail(ErrorCode::kDomainError, "h: denominator <= 0");
  return tau * (1.0 - 2.0 * tau + 2.0 * tau * tau) / den;
}

double h_domain_end() {
  static const double root = [] {
    double lo = 0.0, hi = 0.5;  // denominator is 1 at 0 and -1/4 at 1/2
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (h_denominator(mid) > 0.0 ? lo : hi) = mid;
    }
    return lo;
  }();
  return root;
}

double h_inverse(double v, double tol) {
  if (!(v >= 0.0)) fail(ErrorCode::kDomainError, "h_inverse: v < 0");
  if (v == 0.0) return 0.0;
  double lo = 0.0, hi = h_domain_end();
  double t = std::min(v, 0.5 * hi);
  for (int it = 0; it < 300; ++it) {
    const double r = h_func(t) - v;
    if (std::abs(r) <= tol) return t;
    (r < 0.0 ? lo : hi) = t;
    double next = t - r / h_derivative(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) break;
    t = next;
  }
  return t;
}

double omega(double tau) {
  if (!(tau > -1.0)) fail(ErrorCode::kDomainError, "omega: tau <= -1");
  return tau - std::log1p(tau);
}

double local_norm(const DenseSymmetricMatrix& H, std::span<const double> d) {
  if (H.size() != d.size()) {
    fail(ErrorCode::kDimensionMismatch, "local_norm: sizes disagree");
  }
  const double q = H.quadratic_form(d);
  if (q >= 0.0) return std::sqrt(q);
  const double nd = norm2(d);
  if (q < -1e-10 * nd * nd * H.frobenius_norm()) {
    fail(ErrorCode::kNegativeQuadraticForm, "local_norm: d^T H d < 0");
  }
  return 0.0;
}

void PnConfig::validate() const {
  if (!(beta > 0.0 && beta < 0.05)) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: beta must lie in (0, 1/20)");
  }
  if (!(sigma > 0.0 && sigma < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: sigma must lie in (0, 1)");
  }
  if (!(C > 1.0)) fail(ErrorCode::kInvalidArgument, "PnConfig: C must exceed 1");
  if (!(C1 > 0.0 && C1 < 0.5)) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: C1 must lie in (0, 1/2)");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: delta must lie in (0, 1)");
  }
  const double one_m = 1.0 - beta;
  const double two_m = 1.0 - 2.0 * beta;
  if (1.0 / (C * one_m) + beta / (two_m * one_m * one_m) > sigma) {
    fail(ErrorCode::kInvalidArgument,
         "PnConfig: 1/(C(1-beta)) + beta/((1-2beta)(1-beta)^2) > sigma");
  }
  if (1.0 / C + 1.0 / two_m > 2.0) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: 1/C + 1/(1-2beta) > 2");
  }
  if (!(lambda_stop > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: lambda_stop must be positive");
  }
  if (inner_max_iter == 0 || inner_check_period == 0) {
    fail(ErrorCode::kInvalidArgument, "PnConfig: inner budget");
  }
}

SolveReport pn_solve(const SelfConcordantObjective& objective,
                     std::span<const double> x0, const GeneralizedSimplex& set,
                     const PnConfig& cfg, PnTrace* trace) {
  cfg.validate();
  const auto started = Clock::now();
  set.require_assumption();
  const std::size_t n = set.size();
  if (x0.size() != n || objective.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "pn_solve: sizes disagree");
  }
  if (!set.contains(x0)) fail(ErrorCode::kInvalidArgument, "pn_solve: x0 not in F");
  if (!objective.in_domain(x0)) {
    fail(ErrorCode::kDomainViolation, "pn_solve: x0 outside dom(f)");
  }

  PnTrace local;
  PnTrace& tr = trace ? *trace : local;
  tr = {};
  const double h_inv_beta = h_inverse(cfg.beta);
  tr.h_inverse_beta = h_inv_beta;

  double lambda_prev = cfg.beta / cfg.sigma;
  double xi = std::min(cfg.beta / cfg.C, cfg.C1 * h_inv_beta);
  Vector x(x0.begin(), x0.end());
  Vector x_tilde = x;
  Vector fgrad;
  DenseSymmetricMatrix H;

  SolveReport report;
  report.termination = Termination::kMaxIterations;
  std::size_t k = 0;
  while (k < cfg.max_outer) {
    objective.derivatives(x, fgrad, H);

    const auto inner_started = Clock::now();
    InnerOutcome inner;
    try {
      inner = solve_model(H, x, fgrad, x_tilde, set, xi, cfg);
    } catch (const Error&) {
      const std::chrono::duration<double> spent = Clock::now() - inner_started;
      const std::chrono::duration<double> total = Clock::now() - started;
      tr.qp_seconds += spent.count();
      tr.final_lambda = lambda_prev;
      tr.total_seconds = total.count();
      throw;
    }
    const std::chrono::duration<double> inner_time = Clock::now() - inner_started;

    PnStep step;
    step.xi = xi;
    step.certificate = inner.certificate;
    step.inner_iterations = inner.iterations;
    step.inner_seconds = inner_time.count();
    tr.qp_seconds += step.inner_seconds;

    Vector dx(n);
    for (std::size_t i = 0; i < n; ++i) dx[i] = inner.z[i] - x[i];
    const double gamma = local_norm(H, dx);
    step.gamma = gamma;

    double lambda;
    if (gamma + xi <= h_inv_beta || lambda_prev <= cfg.beta) {
      lambda = cfg.sigma * lambda_prev;
      step.full_step = true;
      x = inner.z;
      xi *= cfg.sigma;
    } else {
      lambda = lambda_prev;
      const double den = gamma * gamma * gamma + gamma * gamma - xi * xi * gamma;
      if (!(den > 0.0)) {
        fail(ErrorCode::kDegenerate, "pn: damped-step denominator is not positive");
      }
      const double alpha = cfg.delta * (gamma * gamma - xi * xi) / den;
      step.step_size = alpha;
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * dx[i];
    }
    step.lambda = lambda;
    tr.steps.push_back(step);
    ++k;

    if (!objective.in_domain(x)) {
      std::ostringstream os;
      os << "pn: iterate " << k << " left dom(f)";
      fail(ErrorCode::kDomainViolation, os.str());
    }
    x_tilde = std::move(inner.z);
    lambda_prev = lambda;
    if (lambda <= cfg.lambda_stop) {
      report.termination = Termination::kResidualConverged;
      break;
    }
  }

  tr.final_lambda = lambda_prev;
  report.iterations = k;
  report.objective = objective.value(x);
  report.kkt_residual = linear_gap(objective.gradient(x), x, set);
  report.x = std::move(x);
  report.wall_time = Clock::now() - started;
  tr.total_seconds = report.wall_time.count();
  return report;
}

}  // namespace gsqp
