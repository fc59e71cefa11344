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

#include "gsqp/gsqp.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "gsqp/baselines.hpp"
#include "gsqp/bench.hpp"
#include "gsqp/instance_io.hpp"
#include "gsqp/proj.hpp"
#include "gsqp/vem.hpp"

struct gsqp_instance {
  gsqp::Instance inst;
};

namespace {

thread_local std::string g_last_error;

gsqp_status to_status(gsqp::ErrorCode code) {
  using gsqp::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidArgument: return GSQP_INVALID_ARGUMENT;
    case ErrorCode::kDimensionMismatch: return GSQP_DIMENSION_MISMATCH;
    case ErrorCode::kInfeasible: return GSQP_INFEASIBLE;
    case ErrorCode::kDegenerate: return GSQP_DEGENERATE;
    case ErrorCode::kNonPositiveCurvature: return GSQP_NON_POSITIVE_CURVATURE;
    case ErrorCode::kDomainError: return GSQP_DOMAIN_ERROR;
    case ErrorCode::kDomainViolation: return GSQP_DOMAIN_VIOLATION;
    case ErrorCode::kInnerSolverStall: return GSQP_INNER_SOLVER_STALL;
    case ErrorCode::kLineSearchFail: return GSQP_LINE_SEARCH_FAIL;
    case ErrorCode::kNegativeQuadraticForm: return GSQP_NEGATIVE_QUADRATIC_FORM;
    case ErrorCode::kDegenerateInstance: return GSQP_DEGENERATE_INSTANCE;
    case ErrorCode::kIo: return GSQP_IO_ERROR;
  }
  return GSQP_INTERNAL_ERROR;
}

gsqp_status set_error(gsqp_status status, const char* what) {
  g_last_error = what;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
gsqp_status guarded(F&& body) {
  try {
    body();
    return GSQP_OK;
  } catch (const gsqp::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(GSQP_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(GSQP_INTERNAL_ERROR, e.what());
  } catch (...) {
    return set_error(GSQP_INTERNAL_ERROR, "unknown exception");
  }
}

gsqp_status null_arg(const char* name) {
  return set_error(GSQP_NULL_ARGUMENT, (std::string(name) + " is NULL").c_str());
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gsqp::TableFormat to_format(gsqp_format f) {
  return f == GSQP_FORMAT_MARKDOWN ? gsqp::TableFormat::kMarkdown
                                   : gsqp::TableFormat::kCsv;
}

gsqp::QpSolverKind to_solver(gsqp_solver s) {
  switch (s) {
    case GSQP_SOLVER_VEM: return gsqp::QpSolverKind::kVem;
    case GSQP_SOLVER_PG: return gsqp::QpSolverKind::kPg;
    case GSQP_SOLVER_FISTA: return gsqp::QpSolverKind::kFista;
    case GSQP_SOLVER_FW: return gsqp::QpSolverKind::kFw;
  }
  gsqp::fail(gsqp::ErrorCode::kInvalidArgument, "unknown solver id");
}

void emit_strings(const std::string& table, const std::string& assertions,
                  char** table_out, char** assertions_out) {
  char* t = table_out ? copy_string(table) : nullptr;
  char* a = nullptr;
  try {
    a = assertions_out ? copy_string(assertions) : nullptr;
  } catch (...) {
    std::free(t);
    throw;
  }
  if (table_out) *table_out = t;
  if (assertions_out) *assertions_out = a;
}

gsqp::SsnConfig to_ssn(const gsqp_proj_options* opts) {
  gsqp::SsnConfig cfg;
  if (opts) {
    cfg.grad_tol = opts->grad_tol;
    cfg.max_iter = static_cast<int>(opts->max_iter);
  }
  return cfg;
}

void fill_proj_report(const gsqp::Vector& x, const gsqp::GeneralizedSimplex& set,
                      const gsqp::SsnResult& res, double seconds,
                      gsqp_proj_report* report) {
  if (!report) return;
  const double b = set.budget();
  report->iterations = static_cast<uint64_t>(res.trace.iterations);
  report->y = res.y;
  report->final_phi_prime = res.trace.final_phi_prime;
  report->violation = std::abs(gsqp::accurate_sum(x) - b);
  report->relative_violation = report->violation / std::max(1.0, std::abs(b));
  report->wall_time = seconds;
  report->used_safeguard = res.trace.used_safeguard ? 1 : 0;
}

}  // namespace

extern "C" {

const char* gsqp_version(void) { return "0.1.0"; }

const char* gsqp_status_string(gsqp_status status) {
  switch (status) {
    case GSQP_OK: return "ok";
    case GSQP_INVALID_ARGUMENT: return "invalid argument";
    case GSQP_DIMENSION_MISMATCH: return "dimension mismatch";
    case GSQP_INFEASIBLE: return "infeasible";
    case GSQP_DEGENERATE: return "degenerate";
    case GSQP_NON_POSITIVE_CURVATURE: return "non-positive curvature";
    case GSQP_DOMAIN_ERROR: return "domain error";
    case GSQP_DOMAIN_VIOLATION: return "domain violation";
    case GSQP_INNER_SOLVER_STALL: return "inner solver stall";
    case GSQP_LINE_SEARCH_FAIL: return "line search failure";
    case GSQP_NEGATIVE_QUADRATIC_FORM: return "negative quadratic form";
    case GSQP_DEGENERATE_INSTANCE: return "degenerate instance";
    case GSQP_IO_ERROR: return "i/o error";
    case GSQP_NULL_ARGUMENT: return "null argument";
    case GSQP_INTERNAL_ERROR: return "internal error";
  }
  return "unknown status";
}

const char* gsqp_termination_string(gsqp_termination termination) {
  return gsqp::to_string(static_cast<gsqp::Termination>(termination));
}

const char* gsqp_last_error(void) { return g_last_error.c_str(); }

void gsqp_string_free(char* s) { std::free(s); }

gsqp_status gsqp_instance_generate_qp(size_t n, double cond, double ratio,
                                      uint64_t seed, gsqp_instance** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    const gsqp::QpInstanceSpec spec{n, cond, ratio, seed};
    *out = new gsqp_instance{gsqp::make_instance(gsqp::gen_qp_instance(spec), spec)};
  });
}

gsqp_status gsqp_instance_generate_projection(size_t n, uint64_t seed,
                                              gsqp_instance** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new gsqp_instance{
        gsqp::make_instance(gsqp::gen_projection_instance(n, seed), seed)};
  });
}

gsqp_status gsqp_instance_create_qp(size_t n, const double* Q, const double* c,
                                    const double* lower, const double* upper,
                                    double b, gsqp_instance** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!Q || !c || !lower || !upper) return null_arg("Q, c, lower or upper");
  return guarded([&] {
    gsqp::QpProblem problem(
        gsqp::DenseSymmetricMatrix(n, gsqp::Vector(Q, Q + n * n)),
        gsqp::Vector(c, c + n),
        gsqp::GeneralizedSimplex(b, gsqp::Vector(lower, lower + n),
                                 gsqp::Vector(upper, upper + n)));
    *out = new gsqp_instance{gsqp::make_instance(problem)};
  });
}

gsqp_status gsqp_instance_load(const char* path, gsqp_instance** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  if (!path) return null_arg("path");
  return guarded([&] { *out = new gsqp_instance{gsqp::read_instance(std::string(path))}; });
}

gsqp_status gsqp_instance_save(const gsqp_instance* inst, const char* path) {
  if (!inst) return null_arg("inst");
  if (!path) return null_arg("path");
  return guarded([&] { gsqp::write_instance(std::string(path), inst->inst); });
}

void gsqp_instance_free(gsqp_instance* inst) { delete inst; }

gsqp_status gsqp_instance_get_info(const gsqp_instance* inst, gsqp_instance_info* info) {
  if (!inst) return null_arg("inst");
  if (!info) return null_arg("info");
  const auto& i = inst->inst;
  info->n = i.size();
  info->kind = i.kind == gsqp::InstanceKind::kQp ? GSQP_INSTANCE_QP
                                                 : GSQP_INSTANCE_PROJECTION;
  info->b = i.set.budget();
  info->has_xbar = i.xbar ? 1 : 0;
  info->lipschitz = i.meta.lipschitz;
  info->seed = i.meta.seed;
  info->effective_seed = i.meta.effective_seed;
  info->cond = i.meta.cond;
  info->ratio = i.meta.ratio;
  return GSQP_OK;
}

gsqp_status gsqp_instance_get_xbar(const gsqp_instance* inst, double* out, size_t len) {
  if (!inst) return null_arg("inst");
  if (!out) return null_arg("out");
  const auto& xbar = inst->inst.xbar;
  if (!xbar) return set_error(GSQP_INVALID_ARGUMENT, "instance has no planted optimum");
  if (len != xbar->size()) return set_error(GSQP_DIMENSION_MISMATCH, "len != n");
  std::copy(xbar->begin(), xbar->end(), out);
  return GSQP_OK;
}

void gsqp_qp_options_init(gsqp_qp_options* opts) {
  if (!opts) return;
  opts->solver = GSQP_SOLVER_VEM;
  opts->tol = 1e-12;
  opts->criterion = GSQP_CRITERION_GAP;
  opts->max_iter = 1000000;
  opts->time_limit = 300.0;
  opts->lipschitz = 0.0;
}

void gsqp_proj_options_init(gsqp_proj_options* opts) {
  if (!opts) return;
  const gsqp::SsnConfig d;
  opts->grad_tol = d.grad_tol;
  opts->max_iter = static_cast<uint32_t>(d.max_iter);
}

void gsqp_dopt_options_init(gsqp_dopt_options* opts) {
  if (!opts) return;
  opts->n = 1000;
  opts->p = 100;
  opts->seed = 1;
  opts->subsolver = GSQP_SUBSOLVER_VEM;
  opts->lambda_stop = 1e-3;
}

void gsqp_bench_qp_options_init(gsqp_bench_qp_options* opts) {
  if (!opts) return;
  static const double kConds[] = {1e2, 1e4, 1e6, 1e8};
  static const double kRatios[] = {0.2, 0.4, 0.6, 0.8};
  static const gsqp_solver kSolvers[] = {GSQP_SOLVER_VEM, GSQP_SOLVER_PG,
                                         GSQP_SOLVER_FISTA, GSQP_SOLVER_FW};
  opts->n = 1000;
  opts->conds = kConds;
  opts->num_conds = 4;
  opts->ratios = kRatios;
  opts->num_ratios = 4;
  opts->solvers = kSolvers;
  opts->num_solvers = 4;
  opts->seed = 1;
  opts->threads = 1;
  opts->fw_max_iter = 10000;
  opts->time_limit = 300.0;
}

gsqp_status gsqp_solve_qp(const gsqp_instance* inst, const gsqp_qp_options* opts,
                          double* x_out, size_t len, gsqp_solve_report* report) {
  if (!inst) return null_arg("inst");
  gsqp_qp_options o;
  gsqp_qp_options_init(&o);
  if (opts) o = *opts;
  return guarded([&] {
    const gsqp::Instance& in = inst->inst;
    const gsqp::QpProblem problem = in.qp_problem();
    const std::size_t n = problem.size();
    if (x_out && len != n) gsqp::fail(gsqp::ErrorCode::kDimensionMismatch, "len != n");
    const auto start = gsqp::StartPoint::auto_project(gsqp::Vector(n, 0.0));
    std::optional<std::chrono::duration<double>> limit;
    if (o.time_limit > 0.0) limit = std::chrono::duration<double>(o.time_limit);

    gsqp::SolveReport rep;
    if (o.solver == GSQP_SOLVER_VEM) {
      gsqp::VemConfig cfg;
      cfg.tol = o.tol;
      cfg.max_iter = o.max_iter;
      cfg.time_limit = limit;
      cfg.criterion = o.criterion == GSQP_CRITERION_KKT
                          ? gsqp::VemCriterion::kKktResidual
                          : gsqp::VemCriterion::kGapOverQNorm;
      rep = gsqp::vem_solve(problem, start, cfg);
    } else {
      gsqp::BaselineConfig cfg;
      cfg.tol = o.tol;
      cfg.max_iter = o.max_iter;
      cfg.time_limit = limit;
      cfg.lipschitz = o.lipschitz > 0.0 ? o.lipschitz : in.meta.lipschitz;
      switch (to_solver(o.solver)) {
        case gsqp::QpSolverKind::kPg:
          rep = gsqp::pg_solve(problem, start, cfg);
          break;
        case gsqp::QpSolverKind::kFista:
          rep = gsqp::fista_solve(problem, start, cfg);
          break;
        default:
          rep = gsqp::fw_solve(problem, start, cfg);
          break;
      }
    }
    if (report) {
      report->objective = rep.objective;
      report->iterations = rep.iterations;
      report->termination = static_cast<gsqp_termination>(rep.termination);
      report->kkt_residual = rep.kkt_residual;
      report->wall_time = rep.wall_time.count();
      report->relerr = in.xbar ? gsqp::distance2(rep.x, *in.xbar) /
                                     (1.0 + gsqp::norm2(*in.xbar))
                               : std::numeric_limits<double>::quiet_NaN();
      report->equality_violation = problem.feasible_set.equality_violation(rep.x);
      report->bound_violation = problem.feasible_set.bound_violation(rep.x);
    }
    if (x_out) std::copy(rep.x.begin(), rep.x.end(), x_out);
  });
}

gsqp_status gsqp_project(const gsqp_instance* inst, const gsqp_proj_options* opts,
                         double* x_out, size_t len, gsqp_proj_report* report) {
  if (!inst) return null_arg("inst");
  return guarded([&] {
    const gsqp::Instance& in = inst->inst;
    const gsqp::Vector point = in.projection_point();
    if (x_out && len != point.size()) {
      gsqp::fail(gsqp::ErrorCode::kDimensionMismatch, "len != n");
    }
    const auto t0 = std::chrono::steady_clock::now();
    gsqp::SsnResult res;
    const gsqp::Vector x =
        gsqp::proj_generalized_simplex(point, in.set, to_ssn(opts), &res);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    fill_proj_report(x, in.set, res, dt.count(), report);
    if (x_out) std::copy(x.begin(), x.end(), x_out);
  });
}

gsqp_status gsqp_project_point(size_t n, const double* point, const double* lower,
                               const double* upper, double b,
                               const gsqp_proj_options* opts, double* x_out,
                               gsqp_proj_report* report) {
  if (!point || !lower || !upper) return null_arg("point, lower or upper");
  return guarded([&] {
    const gsqp::GeneralizedSimplex set(b, gsqp::Vector(lower, lower + n),
                                       gsqp::Vector(upper, upper + n));
    const auto t0 = std::chrono::steady_clock::now();
    gsqp::SsnResult res;
    const gsqp::Vector x = gsqp::proj_generalized_simplex(
        std::span<const double>(point, n), set, to_ssn(opts), &res);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    fill_proj_report(x, set, res, dt.count(), report);
    if (x_out) std::copy(x.begin(), x.end(), x_out);
  });
}

gsqp_status gsqp_dopt_run(const gsqp_dopt_options* opts, gsqp_dopt_report* report) {
  gsqp_dopt_options o;
  gsqp_dopt_options_init(&o);
  if (opts) o = *opts;
  return guarded([&] {
    const auto sub = o.subsolver == GSQP_SUBSOLVER_FW ? gsqp::PnSubsolver::kFrankWolfe
                                                      : gsqp::PnSubsolver::kVem;
    const gsqp::DoptRow row = gsqp::run_dopt_case(o.n, o.p, o.seed, sub, o.lambda_stop);
    if (report) {
      report->total_time = row.total_seconds;
      report->qp_time = row.qp_seconds;
      report->final_lambda = row.final_lambda;
      report->objective = row.objective;
      report->outer_iterations = row.outer_iterations;
    }
  });
}

gsqp_status gsqp_bench_projection(const size_t* sizes, size_t num_sizes,
                                  size_t seeds_per_size, uint64_t seed, double grad_tol,
                                  gsqp_format format, char** table_out,
                                  char** assertions_out, int* all_passed) {
  if (num_sizes > 0 && !sizes) return null_arg("sizes");
  return guarded([&] {
    gsqp::ProjectionTableConfig cfg;
    cfg.sizes.assign(sizes, sizes + num_sizes);
    cfg.seeds_per_size = seeds_per_size;
    cfg.seed = seed;
    cfg.grad_tol = grad_tol;
    const auto table = gsqp::run_projection_table(cfg);
    emit_strings(gsqp::format_projection_table(table, to_format(format)),
                 gsqp::format_assertions(table.assertions), table_out, assertions_out);
    if (all_passed) *all_passed = gsqp::all_passed(table.assertions) ? 1 : 0;
  });
}

gsqp_status gsqp_bench_qp(const gsqp_bench_qp_options* opts, gsqp_format format,
                          char** table_out, char** assertions_out, int* all_passed) {
  gsqp_bench_qp_options o;
  gsqp_bench_qp_options_init(&o);
  if (opts) o = *opts;
  if ((o.num_conds && !o.conds) || (o.num_ratios && !o.ratios) ||
      (o.num_solvers && !o.solvers)) {
    return null_arg("conds, ratios or solvers");
  }
  return guarded([&] {
    gsqp::QpTableConfig cfg;
    cfg.n = o.n;
    cfg.conds.assign(o.conds, o.conds + o.num_conds);
    cfg.ratios.assign(o.ratios, o.ratios + o.num_ratios);
    cfg.solvers.clear();
    for (size_t i = 0; i < o.num_solvers; ++i) cfg.solvers.push_back(to_solver(o.solvers[i]));
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.fw_max_iter = o.fw_max_iter;
    cfg.time_limit_seconds = o.time_limit > 0.0 ? o.time_limit : 1e30;
    const auto table = gsqp::run_qp_table(cfg);
    emit_strings(gsqp::format_qp_table(table, to_format(format)),
                 gsqp::format_assertions(table.assertions), table_out, assertions_out);
    if (all_passed) *all_passed = gsqp::all_passed(table.assertions) ? 1 : 0;
  });
}

gsqp_status gsqp_bench_dopt(const size_t* sizes, size_t num_sizes, size_t p_divisor,
                            uint64_t seed, double lambda_stop, gsqp_format format,
                            char** table_out, char** assertions_out, int* all_passed) {
  if (num_sizes > 0 && !sizes) return null_arg("sizes");
  return guarded([&] {
    gsqp::DoptTableConfig cfg;
    cfg.sizes.assign(sizes, sizes + num_sizes);
    cfg.p_divisor = p_divisor;
    cfg.seed = seed;
    cfg.lambda_stop = lambda_stop;
    const auto table = gsqp::run_dopt_table(cfg);
    emit_strings(gsqp::format_dopt_table(table, to_format(format)),
                 gsqp::format_assertions(table.assertions), table_out, assertions_out);
    if (all_passed) *all_passed = gsqp::all_passed(table.assertions) ? 1 : 0;
  });
}

}  // extern "C"
