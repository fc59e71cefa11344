/*
 * Copyright 2026 The gsqp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface to libgsqp.
 *
 * Every function returns a gsqp_status. On failure a message describing the
 * error is available from gsqp_last_error() on the calling thread until the
 * next failing call on that thread. Instances are opaque handles released
 * with gsqp_instance_free(); strings returned through char** out-parameters
 * are released with gsqp_string_free().
 */

#ifndef GSQP_GSQP_H_
#define GSQP_GSQP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(GSQP_BUILDING_LIBRARY)
#define GSQP_API __attribute__((visibility("default")))
#else
#define GSQP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gsqp_status {
  GSQP_OK = 0,
  GSQP_INVALID_ARGUMENT = 1,
  GSQP_DIMENSION_MISMATCH = 2,
  GSQP_INFEASIBLE = 3,
  GSQP_DEGENERATE = 4,
  GSQP_NON_POSITIVE_CURVATURE = 5,
  GSQP_DOMAIN_ERROR = 6,
  GSQP_DOMAIN_VIOLATION = 7,
  GSQP_INNER_SOLVER_STALL = 8,
  GSQP_LINE_SEARCH_FAIL = 9,
  GSQP_NEGATIVE_QUADRATIC_FORM = 10,
  GSQP_DEGENERATE_INSTANCE = 11,
  GSQP_IO_ERROR = 12,
  GSQP_NULL_ARGUMENT = 13,
  GSQP_INTERNAL_ERROR = 14
} gsqp_status;

typedef enum gsqp_termination {
  GSQP_TERM_GAP_CONVERGED = 0,
  GSQP_TERM_RESIDUAL_CONVERGED = 1,
  GSQP_TERM_USER_ERROR_CONVERGED = 2,
  GSQP_TERM_MAX_ITERATIONS = 3,
  GSQP_TERM_TIME_LIMIT = 4,
  GSQP_TERM_STAGNATED = 5
} gsqp_termination;

typedef enum gsqp_solver {
  GSQP_SOLVER_VEM = 0,
  GSQP_SOLVER_PG = 1,
  GSQP_SOLVER_FISTA = 2,
  GSQP_SOLVER_FW = 3
} gsqp_solver;

typedef enum gsqp_criterion {
  /* (g_s - g_t) / max(1, ||Q||_F) <= tol */
  GSQP_CRITERION_GAP = 0,
  /* ||x - Proj_F(x - Qx - c)|| / (1 + ||x||) <= tol */
  GSQP_CRITERION_KKT = 1
} gsqp_criterion;

typedef enum gsqp_subsolver {
  GSQP_SUBSOLVER_VEM = 0,
  GSQP_SUBSOLVER_FW = 1
} gsqp_subsolver;

typedef enum gsqp_format { GSQP_FORMAT_CSV = 0, GSQP_FORMAT_MARKDOWN = 1 } gsqp_format;

typedef enum gsqp_instance_kind {
  GSQP_INSTANCE_QP = 0,
  GSQP_INSTANCE_PROJECTION = 1
} gsqp_instance_kind;

typedef struct gsqp_instance gsqp_instance;

typedef struct gsqp_instance_info {
  size_t n;
  gsqp_instance_kind kind;
  double b;
  int has_xbar;
  double lipschitz; /* 0 when unknown */
  uint64_t seed;
  uint64_t effective_seed;
  double cond;
  double ratio;
} gsqp_instance_info;

typedef struct gsqp_qp_options {
  gsqp_solver solver;
  double tol;               /* VEM: criterion tolerance; PG/FISTA: step and residual tolerance */
  gsqp_criterion criterion; /* VEM only */
  uint64_t max_iter;
  double time_limit;        /* seconds; <= 0 means none */
  double lipschitz;         /* PG/FISTA step 1/L; 0 = instance metadata, else power iteration */
} gsqp_qp_options;

typedef struct gsqp_solve_report {
  double objective;
  uint64_t iterations;
  gsqp_termination termination;
  double kkt_residual;
  double wall_time;          /* seconds */
  double relerr;             /* ||x - xbar|| / (1 + ||xbar||); NaN without xbar */
  double equality_violation; /* |e^T x - b| */
  double bound_violation;
} gsqp_solve_report;

typedef struct gsqp_proj_options {
  double grad_tol; /* relative to max(1, |b|) */
  uint32_t max_iter;
} gsqp_proj_options;

typedef struct gsqp_proj_report {
  uint64_t iterations;
  double y;
  double final_phi_prime;
  double violation;          /* |e^T x - b| */
  double relative_violation; /* violation / max(1, |b|) */
  double wall_time;
  int used_safeguard;
} gsqp_proj_report;

typedef struct gsqp_dopt_options {
  size_t n;
  size_t p;
  uint64_t seed;
  gsqp_subsolver subsolver;
  double lambda_stop;
} gsqp_dopt_options;

typedef struct gsqp_dopt_report {
  double total_time;
  double qp_time;
  double final_lambda;
  double objective;
  uint64_t outer_iterations;
} gsqp_dopt_report;

typedef struct gsqp_bench_qp_options {
  size_t n;
  const double* conds;
  size_t num_conds;
  const double* ratios;
  size_t num_ratios;
  const gsqp_solver* solvers;
  size_t num_solvers;
  uint64_t seed;
  size_t threads;
  uint64_t fw_max_iter;
  double time_limit;
} gsqp_bench_qp_options;

GSQP_API const char* gsqp_version(void);
GSQP_API const char* gsqp_status_string(gsqp_status status);
GSQP_API const char* gsqp_termination_string(gsqp_termination termination);
GSQP_API const char* gsqp_last_error(void);
GSQP_API void gsqp_string_free(char* s);

/* Instances */
GSQP_API gsqp_status gsqp_instance_generate_qp(size_t n, double cond, double ratio,
                                               uint64_t seed, gsqp_instance** out);
GSQP_API gsqp_status gsqp_instance_generate_projection(size_t n, uint64_t seed,
                                                       gsqp_instance** out);
/* Q is n*n row-major and must be exactly symmetric. */
GSQP_API gsqp_status gsqp_instance_create_qp(size_t n, const double* Q, const double* c,
                                             const double* lower, const double* upper,
                                             double b, gsqp_instance** out);
GSQP_API gsqp_status gsqp_instance_load(const char* path, gsqp_instance** out);
GSQP_API gsqp_status gsqp_instance_save(const gsqp_instance* inst, const char* path);
GSQP_API void gsqp_instance_free(gsqp_instance* inst);
GSQP_API gsqp_status gsqp_instance_get_info(const gsqp_instance* inst,
                                            gsqp_instance_info* info);
GSQP_API gsqp_status gsqp_instance_get_xbar(const gsqp_instance* inst, double* out,
                                            size_t len);

/* Solvers */
GSQP_API void gsqp_qp_options_init(gsqp_qp_options* opts);
GSQP_API void gsqp_proj_options_init(gsqp_proj_options* opts);
GSQP_API void gsqp_dopt_options_init(gsqp_dopt_options* opts);

/* x_out may be NULL; otherwise it must hold n doubles. */
GSQP_API gsqp_status gsqp_solve_qp(const gsqp_instance* inst, const gsqp_qp_options* opts,
                                   double* x_out, size_t len, gsqp_solve_report* report);
/* Projects the instance's point (projection instances only). */
GSQP_API gsqp_status gsqp_project(const gsqp_instance* inst, const gsqp_proj_options* opts,
                                  double* x_out, size_t len, gsqp_proj_report* report);
/* Projects an arbitrary point onto {e^T x = b, lower <= x <= upper}. */
GSQP_API gsqp_status gsqp_project_point(size_t n, const double* point, const double* lower,
                                        const double* upper, double b,
                                        const gsqp_proj_options* opts, double* x_out,
                                        gsqp_proj_report* report);
GSQP_API gsqp_status gsqp_dopt_run(const gsqp_dopt_options* opts, gsqp_dopt_report* report);

/* Benchmark tables. table_out and assertions_out (each may be NULL) receive
 * strings to be released with gsqp_string_free. *all_passed is 1 when every
 * in-run assertion holds. */
GSQP_API void gsqp_bench_qp_options_init(gsqp_bench_qp_options* opts);
GSQP_API gsqp_status gsqp_bench_projection(const size_t* sizes, size_t num_sizes,
                                           size_t seeds_per_size, uint64_t seed,
                                           double grad_tol, gsqp_format format,
                                           char** table_out, char** assertions_out,
                                           int* all_passed);
GSQP_API gsqp_status gsqp_bench_qp(const gsqp_bench_qp_options* opts, gsqp_format format,
                                   char** table_out, char** assertions_out, int* all_passed);
GSQP_API gsqp_status gsqp_bench_dopt(const size_t* sizes, size_t num_sizes, size_t p_divisor,
                                     uint64_t seed, double lambda_stop, gsqp_format format,
                                     char** table_out, char** assertions_out, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* GSQP_GSQP_H_ */
