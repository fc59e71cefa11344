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

// Benchmark tables: projection accuracy, the QP solver grid and projected
// Newton on D-optimal design. Each run also evaluates a set of in-run
// assertions; a table "passes" when all of them hold.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gsqp/proj_newton.hpp"

namespace gsqp {

enum class TableFormat { kCsv, kMarkdown };

struct BenchAssertion {
  std::string name;
  bool passed = false;
  std::string detail;
};

bool all_passed(const std::vector<BenchAssertion>& assertions);

// ---- projection -----------------------------------------------------------

struct ProjectionTableConfig {
  std::vector<std::size_t> sizes{100'000};
  std::size_t seeds_per_size = 1;
  std::uint64_t seed = 1;
  double grad_tol = 1e-12;
};

struct ProjectionRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double violation = 0.0;           // |e^T x - b|
  double relative_violation = 0.0;  // |e^T x - b| / max(1, |b|)
  double seconds = 0.0;
  std::size_t iterations = 0;
  bool used_safeguard = false;
};

struct ProjectionTable {
  std::vector<ProjectionRow> rows;
  std::vector<BenchAssertion> assertions;
};

ProjectionTable run_projection_table(const ProjectionTableConfig& cfg);
std::string format_projection_table(const ProjectionTable& table,
                                    TableFormat format);

// ---- QP grid --------------------------------------------------------------

enum class QpSolverKind { kVem, kPg, kFista, kFw };
const char* to_string(QpSolverKind s);
/// "vem", "pg", "fista", "fw"; throws kInvalidArgument otherwise.
QpSolverKind parse_qp_solver(const std::string& name);

struct QpTableConfig {
  std::size_t n = 1000;
  std::vector<double> conds{1e2, 1e4, 1e6, 1e8};
  std::vector<double> ratios{0.2, 0.4, 0.6, 0.8};
  std::vector<QpSolverKind> solvers{QpSolverKind::kVem, QpSolverKind::kPg,
                                    QpSolverKind::kFista, QpSolverKind::kFw};
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  double vem_tol = 1e-12;
  /// PG/FISTA tolerance on the step length and on the natural residual.
  double baseline_tol = 1e-10;
  std::size_t fw_max_iter = 10'000;
  double time_limit_seconds = 300.0;
  /// Assertion thresholds.
  double vem_relerr_max = 1e-8;
  double fw_relerr_min = 1e-4;
};

struct QpCell {
  double ratio = 0.0;
  double cond = 0.0;
  QpSolverKind solver = QpSolverKind::kVem;
  std::uint64_t seed = 0;  // seed used for this (cond, ratio) instance
  double relerr = 0.0;     // ||x - xbar|| / (1 + ||xbar||)
  double seconds = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::kMaxIterations;
};

struct QpTable {
  QpTableConfig config;
  std::vector<QpCell> cells;  // ratio-major, then cond, then solver
  std::vector<BenchAssertion> assertions;
};

/// Per-cell instance seed: independent of evaluation order and threads.
std::uint64_t qp_cell_seed(std::uint64_t seed, std::size_t cond_index,
                           std::size_t ratio_index);

QpTable run_qp_table(const QpTableConfig& cfg);
/// Wide layout: one row per (ratio, metric) with metric in {relerr, time},
/// one column per (cond, solver).
std::string format_qp_table(const QpTable& table, TableFormat format);

// ---- D-optimal design -----------------------------------------------------

struct DoptTableConfig {
  std::vector<std::size_t> sizes{1000};
  /// p = n / p_divisor
  std::size_t p_divisor = 10;
  std::uint64_t seed = 1;
  double lambda_stop = 1e-3;
  std::vector<PnSubsolver> subsolvers{PnSubsolver::kVem,
                                      PnSubsolver::kFrankWolfe};
};

struct DoptRow {
  std::size_t n = 0;
  std::size_t p = 0;
  PnSubsolver subsolver = PnSubsolver::kVem;
  double total_seconds = 0.0;
  double qp_seconds = 0.0;
  double final_lambda = 0.0;
  double objective = 0.0;
  std::size_t outer_iterations = 0;
  /// "converged", "max_outer" or "inner_stall". A stalled row keeps the
  /// timings of the partial run and a NaN objective.
  std::string status = "converged";
};

struct DoptTable {
  std::vector<DoptRow> rows;
  std::vector<BenchAssertion> assertions;
};

const char* to_string(PnSubsolver s);
/// "vem" or "fw".
PnSubsolver parse_pn_subsolver(const std::string& name);

DoptRow run_dopt_case(std::size_t n, std::size_t p, std::uint64_t seed,
                      PnSubsolver subsolver, double lambda_stop);
DoptTable run_dopt_table(const DoptTableConfig& cfg);
std::string format_dopt_table(const DoptTable& table, TableFormat format);

std::string format_assertions(const std::vector<BenchAssertion>& assertions);

}  // namespace gsqp
