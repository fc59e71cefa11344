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

// gsqp command-line tool. Talks to the library through the C API only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsqp/gsqp.h"

namespace {

struct InstanceDeleter {
  void operator()(gsqp_instance* p) const { gsqp_instance_free(p); }
};
using InstancePtr = std::unique_ptr<gsqp_instance, InstanceDeleter>;

struct CStringDeleter {
  void operator()(char* p) const { gsqp_string_free(p); }
};
using CString = std::unique_ptr<char, CStringDeleter>;

class CliFailure : public std::runtime_error {
 public:
  CliFailure(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void check(gsqp_status s, const char* what) {
  if (s != GSQP_OK) {
    throw CliFailure(2, std::string(what) + ": " + gsqp_status_string(s) + ": " +
                            gsqp_last_error());
  }
}

InstancePtr load(const std::string& path) {
  gsqp_instance* raw = nullptr;
  check(gsqp_instance_load(path.c_str(), &raw), "loading instance");
  return InstancePtr(raw);
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

// Writes a two-line CSV (header, values) to `path`, or to stdout when empty.
void write_report(const std::string& path, const std::string& header,
                  const std::string& values) {
  if (path.empty()) {
    std::cout << header << '\n' << values << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliFailure(2, "cannot open report file " + path);
  out << header << '\n' << values << '\n';
}

void write_text(const std::string& path, const char* text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliFailure(2, "cannot open output file " + path);
  out << text;
}

const std::map<std::string, gsqp_format> kFormats{
    {"csv", GSQP_FORMAT_CSV}, {"md", GSQP_FORMAT_MARKDOWN}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gsqp: QP solvers over the generalized simplex"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gsqp_version());

  // solve-proj
  std::string proj_instance, proj_report;
  double proj_grad_tol = 1e-12;
  auto* solve_proj = app.add_subcommand("solve-proj", "Project an instance's point onto F");
  solve_proj->add_option("--instance", proj_instance, "Projection instance file")->required();
  solve_proj->add_option("--grad-tol", proj_grad_tol, "SSN tolerance on |phi'|, relative to max(1,|b|)");
  solve_proj->add_option("--report", proj_report, "CSV report path (stdout if omitted)");

  // solve-qp
  std::string qp_instance, qp_report, qp_solver = "vem", qp_term = "gap";
  double qp_tol = 1e-12, qp_time_limit = 300.0;
  std::uint64_t qp_max_iter = 1000000;
  auto* solve_qp = app.add_subcommand("solve-qp", "Solve a QP instance");
  solve_qp->add_option("--instance", qp_instance, "QP instance file")->required();
  solve_qp->add_option("--solver", qp_solver, "vem, pg, fista or fw")
      ->check(CLI::IsMember({"vem", "pg", "fista", "fw"}));
  solve_qp->add_option("--tol", qp_tol, "Stopping tolerance");
  solve_qp->add_option("--term", qp_term, "VEM stopping rule: gap or kkt")
      ->check(CLI::IsMember({"gap", "kkt"}));
  solve_qp->add_option("--max-iter", qp_max_iter, "Iteration cap");
  solve_qp->add_option("--time-limit", qp_time_limit, "Seconds; <= 0 disables");
  solve_qp->add_option("--report", qp_report, "CSV report path (stdout if omitted)");

  // gen-qp
  std::size_t gq_n = 1000;
  double gq_cond = 1e2, gq_ratio = 0.2;
  std::uint64_t gq_seed = 1;
  std::string gq_out;
  auto* gen_qp = app.add_subcommand("gen-qp", "Generate a QP with a planted optimum");
  gen_qp->add_option("--n", gq_n, "Dimension");
  gen_qp->add_option("--cond", gq_cond, "Condition number of Q");
  gen_qp->add_option("--ratio", gq_ratio, "Activity threshold in (0, 1)");
  gen_qp->add_option("--seed", gq_seed, "Seed");
  gen_qp->add_option("--out", gq_out, "Output instance file")->required();

  // gen-proj
  std::size_t gp_n = 100000;
  std::uint64_t gp_seed = 1;
  std::string gp_out;
  auto* gen_proj = app.add_subcommand("gen-proj", "Generate a projection instance");
  gen_proj->add_option("--n", gp_n, "Dimension");
  gen_proj->add_option("--seed", gp_seed, "Seed");
  gen_proj->add_option("--out", gp_out, "Output instance file")->required();

  // dopt
  gsqp_dopt_options dopt_opts;
  gsqp_dopt_options_init(&dopt_opts);
  std::string dopt_solver = "vem", dopt_report;
  auto* dopt = app.add_subcommand("dopt", "Projected Newton on a D-optimal design instance");
  dopt->add_option("--n", dopt_opts.n, "Number of candidate experiments");
  dopt->add_option("--p", dopt_opts.p, "Feature dimension (p < n)");
  dopt->add_option("--seed", dopt_opts.seed, "Seed");
  dopt->add_option("--qp-solver", dopt_solver, "vem or fw")
      ->check(CLI::IsMember({"vem", "fw"}));
  dopt->add_option("--lambda-stop", dopt_opts.lambda_stop, "Stop once lambda <= this");
  dopt->add_option("--report", dopt_report, "CSV report path (stdout if omitted)");

  // bench
  auto* bench = app.add_subcommand("bench", "Emit benchmark tables");
  bench->require_subcommand(1);
  std::string bench_format = "csv", bench_out;

  std::vector<std::size_t> bp_sizes{100000};
  std::size_t bp_seeds = 1;
  std::uint64_t bp_seed = 1;
  double bp_grad_tol = 1e-12;
  auto* bench_proj = bench->add_subcommand("proj", "Projection accuracy table");
  bench_proj->add_option("--sizes", bp_sizes, "Dimensions")->delimiter(',');
  bench_proj->add_option("--seeds", bp_seeds, "Seeds per size");
  bench_proj->add_option("--seed", bp_seed, "First seed");
  bench_proj->add_option("--grad-tol", bp_grad_tol, "SSN tolerance");

  std::size_t bq_n = 1000, bq_threads = 1;
  std::vector<double> bq_conds{1e2, 1e4, 1e6, 1e8}, bq_ratios{0.2, 0.4, 0.6, 0.8};
  std::vector<std::string> bq_solvers{"vem", "pg", "fista", "fw"};
  std::uint64_t bq_seed = 1, bq_fw_max_iter = 10000;
  double bq_time_limit = 300.0;
  auto* bench_qp = bench->add_subcommand("qp", "QP solver grid (cond x ratio x solver)");
  bench_qp->add_option("--n", bq_n, "Dimension");
  bench_qp->add_option("--conds", bq_conds, "Condition numbers")->delimiter(',');
  bench_qp->add_option("--ratios", bq_ratios, "Ratios")->delimiter(',');
  bench_qp->add_option("--solvers", bq_solvers, "Solvers")
      ->delimiter(',')
      ->check(CLI::IsMember({"vem", "pg", "fista", "fw"}));
  bench_qp->add_option("--seed", bq_seed, "Seed");
  bench_qp->add_option("--threads", bq_threads, "Worker threads");
  bench_qp->add_option("--fw-max-iter", bq_fw_max_iter, "Frank-Wolfe iteration cap");
  bench_qp->add_option("--time-limit", bq_time_limit, "Per-solve time limit in seconds");

  std::vector<std::size_t> bd_sizes{1000};
  std::size_t bd_divisor = 10;
  std::uint64_t bd_seed = 1;
  double bd_lambda_stop = 1e-3;
  auto* bench_dopt = bench->add_subcommand("dopt", "D-optimal design table (p = n / divisor)");
  bench_dopt->add_option("--sizes", bd_sizes, "Values of n")->delimiter(',');
  bench_dopt->add_option("--p-divisor", bd_divisor, "p = n / divisor");
  bench_dopt->add_option("--seed", bd_seed, "Seed");
  bench_dopt->add_option("--lambda-stop", bd_lambda_stop, "Projected Newton stop level");

  for (auto* sub : {bench_proj, bench_qp, bench_dopt}) {
    sub->add_option("--format", bench_format, "csv or md")
        ->check(CLI::IsMember({"csv", "md"}));
    sub->add_option("--out", bench_out, "Table output path (stdout if omitted)");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_proj) {
      InstancePtr inst = load(proj_instance);
      gsqp_proj_options opts;
      gsqp_proj_options_init(&opts);
      opts.grad_tol = proj_grad_tol;
      gsqp_proj_report rep{};
      check(gsqp_project(inst.get(), &opts, nullptr, 0, &rep), "projecting");
      write_report(proj_report, "iterations,violation,relative_violation,time,safeguard",
                   std::to_string(rep.iterations) + "," + num(rep.violation) + "," +
                       num(rep.relative_violation) + "," + num(rep.wall_time) + "," +
                       std::to_string(rep.used_safeguard));
    } else if (*solve_qp) {
      InstancePtr inst = load(qp_instance);
      gsqp_qp_options opts;
      gsqp_qp_options_init(&opts);
      static const std::map<std::string, gsqp_solver> kSolvers{
          {"vem", GSQP_SOLVER_VEM}, {"pg", GSQP_SOLVER_PG},
          {"fista", GSQP_SOLVER_FISTA}, {"fw", GSQP_SOLVER_FW}};
      opts.solver = kSolvers.at(qp_solver);
      opts.tol = qp_tol;
      opts.criterion = qp_term == "kkt" ? GSQP_CRITERION_KKT : GSQP_CRITERION_GAP;
      opts.max_iter = qp_max_iter;
      opts.time_limit = qp_time_limit;
      gsqp_solve_report rep{};
      check(gsqp_solve_qp(inst.get(), &opts, nullptr, 0, &rep), "solving");
      write_report(qp_report,
                   "solver,iterations,termination,objective,kkt_residual,relerr,time,"
                   "equality_violation,bound_violation",
                   qp_solver + "," + std::to_string(rep.iterations) + "," +
                       gsqp_termination_string(rep.termination) + "," +
                       num(rep.objective) + "," + num(rep.kkt_residual) + "," +
                       num(rep.relerr) + "," + num(rep.wall_time) + "," +
                       num(rep.equality_violation) + "," + num(rep.bound_violation));
    } else if (*gen_qp) {
      gsqp_instance* raw = nullptr;
      check(gsqp_instance_generate_qp(gq_n, gq_cond, gq_ratio, gq_seed, &raw), "generating");
      InstancePtr inst(raw);
      check(gsqp_instance_save(inst.get(), gq_out.c_str()), "saving");
    } else if (*gen_proj) {
      gsqp_instance* raw = nullptr;
      check(gsqp_instance_generate_projection(gp_n, gp_seed, &raw), "generating");
      InstancePtr inst(raw);
      check(gsqp_instance_save(inst.get(), gp_out.c_str()), "saving");
    } else if (*dopt) {
      dopt_opts.subsolver = dopt_solver == "fw" ? GSQP_SUBSOLVER_FW : GSQP_SUBSOLVER_VEM;
      gsqp_dopt_report rep{};
      check(gsqp_dopt_run(&dopt_opts, &rep), "running projected Newton");
      write_report(dopt_report, "n,p,subsolver,ttime,qptime,lambda,objective,outer_iterations",
                   std::to_string(dopt_opts.n) + "," + std::to_string(dopt_opts.p) + "," +
                       dopt_solver + "," + num(rep.total_time) + "," + num(rep.qp_time) +
                       "," + num(rep.final_lambda) + "," + num(rep.objective) + "," +
                       std::to_string(rep.outer_iterations));
    } else if (*bench) {
      const gsqp_format format = kFormats.at(bench_format);
      char* table_raw = nullptr;
      char* asserts_raw = nullptr;
      int passed = 0;
      if (*bench_proj) {
        check(gsqp_bench_projection(bp_sizes.data(), bp_sizes.size(), bp_seeds, bp_seed,
                                    bp_grad_tol, format, &table_raw, &asserts_raw, &passed),
              "projection table");
      } else if (*bench_qp) {
        std::vector<gsqp_solver> solvers;
        for (const auto& s : bq_solvers) {
          solvers.push_back(s == "vem" ? GSQP_SOLVER_VEM
                            : s == "pg" ? GSQP_SOLVER_PG
                            : s == "fista" ? GSQP_SOLVER_FISTA
                                           : GSQP_SOLVER_FW);
        }
        gsqp_bench_qp_options opts;
        gsqp_bench_qp_options_init(&opts);
        opts.n = bq_n;
        opts.conds = bq_conds.data();
        opts.num_conds = bq_conds.size();
        opts.ratios = bq_ratios.data();
        opts.num_ratios = bq_ratios.size();
        opts.solvers = solvers.data();
        opts.num_solvers = solvers.size();
        opts.seed = bq_seed;
        opts.threads = bq_threads;
        opts.fw_max_iter = bq_fw_max_iter;
        opts.time_limit = bq_time_limit;
        check(gsqp_bench_qp(&opts, format, &table_raw, &asserts_raw, &passed), "QP table");
      } else {
        check(gsqp_bench_dopt(bd_sizes.data(), bd_sizes.size(), bd_divisor, bd_seed,
                              bd_lambda_stop, format, &table_raw, &asserts_raw, &passed),
              "D-optimal table");
      }
      CString table(table_raw), asserts(asserts_raw);
      write_text(bench_out, table.get());
      std::cerr << asserts.get();
      if (!passed) throw CliFailure(1, "one or more in-run assertions failed");
    }
  } catch (const CliFailure& e) {
    std::cerr << "gsqp: " << e.what() << '\n';
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << "gsqp: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
