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

#include "gsqp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "gsqp/baselines.hpp"
#include "gsqp/dopt.hpp"
#include "gsqp/gen.hpp"
#include "gsqp/proj.hpp"
#include "gsqp/rng.hpp"
#include "gsqp/vem.hpp"

namespace gsqp {
namespace {

using Clock = std::chrono::steady_clock;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// Renders a header row plus data rows as CSV or as a markdown table.
std::string render(const std::vector<std::string>& header,
                   const std::vector<std::vector<std::string>>& rows,
                   TableFormat format) {
  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& cells) {
    if (format == TableFormat::kCsv) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "," : "") << cells[i];
      }
    } else {
      os << '|';
      for (const auto& c : cells) os << ' ' << c << " |";
    }
    os << '\n';
  };
  emit(header);
  if (format == TableFormat::kMarkdown) {
    emit(std::vector<std::string>(header.size(), "---"));
  }
  for (const auto& r : rows) emit(r);
  return os.str();
}

double relerr(std::span<const double> x, std::span<const double> xbar) {
  return distance2(x, xbar) / (1.0 + norm2(xbar));
}

SolveReport run_solver(QpSolverKind kind, const GeneratedQp& gq,
                       const QpTableConfig& cfg) {
  const QpProblem& problem = gq.problem;
  const StartPoint start = StartPoint::auto_project(Vector(problem.size(), 0.0));
  const auto limit = std::chrono::duration<double>(cfg.time_limit_seconds);
  if (kind == QpSolverKind::kVem) {
    VemConfig v;
    v.tol = cfg.vem_tol;
    v.time_limit = limit;
    return vem_solve(problem, start, v);
  }
  BaselineConfig b;
  b.tol = cfg.baseline_tol;
  b.time_limit = limit;
  b.lipschitz = gq.lipschitz();
  switch (kind) {
    case QpSolverKind::kPg:
      return pg_solve(problem, start, b);
    case QpSolverKind::kFista:
      return fista_solve(problem, start, b);
    default:
      b.max_iter = cfg.fw_max_iter;
      b.fw_step = FwStepRule::kHarmonic;
      return fw_solve(problem, start, b);
  }
}

}  // namespace

bool all_passed(const std::vector<BenchAssertion>& assertions) {
  for (const auto& a : assertions) {
    if (!a.passed) return false;
  }
  return true;
}

std::string format_assertions(const std::vector<BenchAssertion>& assertions) {
  std::ostringstream os;
  for (const auto& a : assertions) {
    os << (a.passed ? "PASS " : "FAIL ") << a.name;
    if (!a.detail.empty()) os << ": " << a.detail;
    os << '\n';
  }
  return os.str();
}

// ---- projection -----------------------------------------------------------

ProjectionTable run_projection_table(const ProjectionTableConfig& cfg) {
  ProjectionTable table;
  SsnConfig ssn;
  ssn.grad_tol = cfg.grad_tol;
  for (std::size_t n : cfg.sizes) {
    for (std::size_t s = 0; s < cfg.seeds_per_size; ++s) {
      const std::uint64_t seed = cfg.seed + s;
      const ProjectionInstance inst = gen_projection_instance(n, seed);
      const auto t0 = Clock::now();
      SsnResult ssn_out;
      const Vector x =
          proj_generalized_simplex(inst.point, inst.set, ssn, &ssn_out);
      const std::chrono::duration<double> dt = Clock::now() - t0;
      ProjectionRow row;
      row.n = n;
      row.seed = seed;
      const double b = inst.set.budget();
      row.violation = std::abs(accurate_sum(x) - b);
      row.relative_violation = row.violation / std::max(1.0, std::abs(b));
      row.seconds = dt.count();
      row.iterations = ssn_out.trace.iterations;
      row.used_safeguard = ssn_out.trace.used_safeguard;
      table.rows.push_back(row);

      const std::string tag = "n=" + std::to_string(n) + " seed=" + std::to_string(seed);
      table.assertions.push_back(
          {"projection violation " + tag,
           row.relative_violation <= cfg.grad_tol,
           sci(row.relative_violation) + " <= " + sci(cfg.grad_tol)});
      table.assertions.push_back({"projection iterations " + tag,
                                  row.iterations <= 50,
                                  std::to_string(row.iterations) + " <= 50"});
    }
  }
  return table;
}

std::string format_projection_table(const ProjectionTable& table,
                                    TableFormat format) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : table.rows) {
    rows.push_back({std::to_string(r.n), std::to_string(r.seed), sci(r.violation),
                    sci(r.relative_violation), fixed(r.seconds, 4),
                    std::to_string(r.iterations), r.used_safeguard ? "1" : "0"});
  }
  return render({"n", "seed", "violation", "relative_violation", "time",
                 "iterations", "safeguard"},
                rows, format);
}

// ---- QP grid --------------------------------------------------------------

const char* to_string(QpSolverKind s) {
  switch (s) {
    case QpSolverKind::kVem: return "vem";
    case QpSolverKind::kPg: return "pg";
    case QpSolverKind::kFista: return "fista";
    case QpSolverKind::kFw: return "fw";
  }
  return "?";
}

QpSolverKind parse_qp_solver(const std::string& name) {
  if (name == "vem") return QpSolverKind::kVem;
  if (name == "pg") return QpSolverKind::kPg;
  if (name == "fista") return QpSolverKind::kFista;
  if (name == "fw") return QpSolverKind::kFw;
  fail(ErrorCode::kInvalidArgument, "unknown QP solver '" + name + "'");
}

std::uint64_t qp_cell_seed(std::uint64_t seed, std::size_t cond_index,
                           std::size_t ratio_index) {
  return splitmix64(seed ^ splitmix64((cond_index << 32) ^ ratio_index));
}

QpTable run_qp_table(const QpTableConfig& cfg) {
  QpTable table;
  table.config = cfg;
  const std::size_t nr = cfg.ratios.size();
  const std::size_t nc = cfg.conds.size();
  const std::size_t ns = cfg.solvers.size();
  table.cells.resize(nr * nc * ns);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= nr * nc) return;
      const std::size_t ri = task / nc;
      const std::size_t ci = task % nc;
      try {
        QpInstanceSpec spec{cfg.n, cfg.conds[ci], cfg.ratios[ri],
                            qp_cell_seed(cfg.seed, ci, ri)};
        const GeneratedQp gq = gen_qp_instance(spec);
        for (std::size_t si = 0; si < ns; ++si) {
          const SolveReport rep = run_solver(cfg.solvers[si], gq, cfg);
          QpCell& cell = table.cells[(ri * nc + ci) * ns + si];
          cell.ratio = cfg.ratios[ri];
          cell.cond = cfg.conds[ci];
          cell.solver = cfg.solvers[si];
          cell.seed = spec.seed;
          cell.relerr = relerr(rep.x, gq.xbar);
          cell.seconds = rep.wall_time.count();
          cell.iterations = rep.iterations;
          cell.termination = rep.termination;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(nr * nc);
        return;
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, cfg.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  for (const QpCell& cell : table.cells) {
    const std::string tag = "cond=" + short_num(cell.cond) +
                            " ratio=" + short_num(cell.ratio);
    if (cell.solver == QpSolverKind::kVem) {
      table.assertions.push_back({"vem relerr " + tag,
                                  cell.relerr <= cfg.vem_relerr_max,
                                  sci(cell.relerr) + " <= " + sci(cfg.vem_relerr_max)});
    } else if (cell.solver == QpSolverKind::kFw) {
      table.assertions.push_back({"fw relerr " + tag,
                                  cell.relerr >= cfg.fw_relerr_min,
                                  sci(cell.relerr) + " >= " + sci(cfg.fw_relerr_min)});
    }
    if (!std::isfinite(cell.relerr) || !(cell.seconds >= 0.0)) {
      table.assertions.push_back({"finite fields " + tag, false,
                                  std::string(to_string(cell.solver))});
    }
  }
  return table;
}

std::string format_qp_table(const QpTable& table, TableFormat format) {
  const auto& cfg = table.config;
  std::vector<std::string> header{"ratio", "metric"};
  for (double cond : cfg.conds) {
    for (QpSolverKind s : cfg.solvers) {
      header.push_back(short_num(cond) + "/" + to_string(s));
    }
  }
  std::vector<std::vector<std::string>> rows;
  const std::size_t nc = cfg.conds.size();
  const std::size_t ns = cfg.solvers.size();
  for (std::size_t ri = 0; ri < cfg.ratios.size(); ++ri) {
    std::vector<std::string> err{short_num(cfg.ratios[ri]), "relerr"};
    std::vector<std::string> time{short_num(cfg.ratios[ri]), "time"};
    for (std::size_t k = 0; k < nc * ns; ++k) {
      const QpCell& cell = table.cells[ri * nc * ns + k];
      err.push_back(sci(cell.relerr));
      time.push_back(fixed(cell.seconds, 3));
    }
    rows.push_back(std::move(err));
    rows.push_back(std::move(time));
  }
  return render(header, rows, format);
}

// ---- D-optimal design -----------------------------------------------------

const char* to_string(PnSubsolver s) {
  return s == PnSubsolver::kVem ? "vem" : "fw";
}

PnSubsolver parse_pn_subsolver(const std::string& name) {
  if (name == "vem") return PnSubsolver::kVem;
  if (name == "fw") return PnSubsolver::kFrankWolfe;
  fail(ErrorCode::kInvalidArgument, "unknown QP subsolver '" + name + "'");
}

DoptRow run_dopt_case(std::size_t n, std::size_t p, std::uint64_t seed,
                      PnSubsolver subsolver, double lambda_stop) {
  const DesignObjective objective(generate_design_data(n, p, seed));
  const GeneralizedSimplex set = GeneralizedSimplex::unit_simplex(n);
  const Vector x0(n, 1.0 / static_cast<double>(n));
  PnConfig cfg;
  cfg.subsolver = subsolver;
  cfg.lambda_stop = lambda_stop;
  PnTrace trace;
  DoptRow row;
  row.n = n;
  row.p = p;
  row.subsolver = subsolver;
  try {
    const SolveReport rep = pn_solve(objective, x0, set, cfg, &trace);
    row.objective = rep.objective;
    row.outer_iterations = rep.iterations;
    row.status = rep.termination == Termination::kResidualConverged ? "converged"
                                                                     : "max_outer";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInnerSolverStall) throw;
    row.objective = std::numeric_limits<double>::quiet_NaN();
    row.outer_iterations = trace.steps.size();
    row.status = "inner_stall";
  }
  row.total_seconds = trace.total_seconds;
  row.qp_seconds = trace.qp_seconds;
  row.final_lambda = trace.final_lambda;
  return row;
}

DoptTable run_dopt_table(const DoptTableConfig& cfg) {
  DoptTable table;
  if (cfg.p_divisor == 0) fail(ErrorCode::kInvalidArgument, "dopt: p_divisor = 0");
  for (std::size_t n : cfg.sizes) {
    const std::size_t p = std::max<std::size_t>(1, n / cfg.p_divisor);
    const DoptRow* vem_row = nullptr;
    const DoptRow* fw_row = nullptr;
    const std::size_t first = table.rows.size();
    for (PnSubsolver s : cfg.subsolvers) {
      table.rows.push_back(run_dopt_case(n, p, cfg.seed, s, cfg.lambda_stop));
    }
    for (std::size_t i = first; i < table.rows.size(); ++i) {
      const DoptRow& r = table.rows[i];
      const std::string tag = "n=" + std::to_string(n) + " " + to_string(r.subsolver);
      table.assertions.push_back({"dopt lambda " + tag,
                                  r.final_lambda <= cfg.lambda_stop,
                                  sci(r.final_lambda) + " <= " + sci(cfg.lambda_stop)});
      table.assertions.push_back({"dopt qptime <= ttime " + tag,
                                  r.qp_seconds <= r.total_seconds,
                                  fixed(r.qp_seconds) + " <= " + fixed(r.total_seconds)});
      (r.subsolver == PnSubsolver::kVem ? vem_row : fw_row) = &r;
    }
    if (vem_row && fw_row) {
      table.assertions.push_back(
          {"dopt vem qptime < fw qptime n=" + std::to_string(n),
           vem_row->qp_seconds < fw_row->qp_seconds,
           fixed(vem_row->qp_seconds) + " < " + fixed(fw_row->qp_seconds)});
    }
  }
  return table;
}

std::string format_dopt_table(const DoptTable& table, TableFormat format) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : table.rows) {
    rows.push_back({std::to_string(r.n), std::to_string(r.p), to_string(r.subsolver),
                    fixed(r.total_seconds), fixed(r.qp_seconds), sci(r.final_lambda),
                    fixed(r.objective, 6), std::to_string(r.outer_iterations),
                    r.status});
  }
  return render({"n", "p", "subsolver", "ttime", "qptime", "lambda", "objective",
                 "outer_iterations", "status"},
                rows, format);
}

}  // namespace gsqp
