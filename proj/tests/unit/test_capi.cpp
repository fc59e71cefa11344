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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "gsqp/gsqp.h"

TEST_CASE("status strings and version") {
  CHECK(std::strlen(gsqp_version()) > 0);
  CHECK(std::string(gsqp_status_string(GSQP_OK)).size() > 0);
  CHECK(std::string(gsqp_status_string(GSQP_IO_ERROR)) !=
        std::string(gsqp_status_string(GSQP_OK)));
  CHECK(std::string(gsqp_termination_string(GSQP_TERM_STAGNATED)).size() > 0);
}

TEST_CASE("null arguments and bad data set the last error") {
  CHECK(gsqp_instance_generate_qp(10, 1e2, 0.2, 1, nullptr) == GSQP_NULL_ARGUMENT);
  CHECK(std::strlen(gsqp_last_error()) > 0);
  gsqp_instance* inst = nullptr;
  CHECK(gsqp_instance_generate_qp(10, 0.5, 0.2, 1, &inst) == GSQP_INVALID_ARGUMENT);
  CHECK(inst == nullptr);
  CHECK(gsqp_instance_load("/nonexistent/path.bin", &inst) == GSQP_IO_ERROR);
  const double Q[4] = {1.0, 0.5, 0.0, 1.0};
  const double c[2] = {0.0, 0.0}, lo[2] = {0.0, 0.0}, hi[2] = {1.0, 1.0};
  CHECK(gsqp_instance_create_qp(2, Q, c, lo, hi, 1.0, &inst) == GSQP_INVALID_ARGUMENT);
  const double Qs[4] = {1.0, 0.0, 0.0, 1.0};
  REQUIRE(gsqp_instance_create_qp(2, Qs, c, lo, hi, 5.0, &inst) == GSQP_OK);
  gsqp_qp_options opts;
  gsqp_qp_options_init(&opts);
  gsqp_solve_report rep;
  CHECK(gsqp_solve_qp(inst, &opts, nullptr, 0, &rep) == GSQP_INFEASIBLE);
  gsqp_instance_free(inst);
  gsqp_instance_free(nullptr);
  gsqp_string_free(nullptr);
}

TEST_CASE("create, solve and inspect a hand-made QP") {
  const double Q[4] = {1.0, 0.0, 0.0, 1.0};
  const double c[2] = {0.0, 0.0}, lo[2] = {0.0, 0.0}, hi[2] = {1.0, 1.0};
  gsqp_instance* inst = nullptr;
  REQUIRE(gsqp_instance_create_qp(2, Q, c, lo, hi, 1.0, &inst) == GSQP_OK);
  gsqp_instance_info info;
  REQUIRE(gsqp_instance_get_info(inst, &info) == GSQP_OK);
  CHECK(info.n == 2);
  CHECK(info.kind == GSQP_INSTANCE_QP);
  CHECK(info.has_xbar == 0);
  gsqp_qp_options opts;
  gsqp_qp_options_init(&opts);
  double x[2];
  gsqp_solve_report rep;
  REQUIRE(gsqp_solve_qp(inst, &opts, x, 2, &rep) == GSQP_OK);
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[1] == doctest::Approx(0.5));
  CHECK(rep.objective == doctest::Approx(0.25));
  CHECK(std::isnan(rep.relerr));
  CHECK(gsqp_solve_qp(inst, &opts, x, 1, &rep) == GSQP_DIMENSION_MISMATCH);
  gsqp_proj_options popts;
  gsqp_proj_options_init(&popts);
  CHECK(gsqp_project(inst, &popts, x, 2, nullptr) == GSQP_INVALID_ARGUMENT);
  gsqp_instance_free(inst);
}

TEST_CASE("generated instances save, load and solve with every solver") {
  gsqp_instance* inst = nullptr;
  REQUIRE(gsqp_instance_generate_qp(60, 1e2, 0.4, 3, &inst) == GSQP_OK);
  const auto path = (std::filesystem::temp_directory_path() / "gsqp_capi_test.bin").string();
  REQUIRE(gsqp_instance_save(inst, path.c_str()) == GSQP_OK);
  gsqp_instance* loaded = nullptr;
  REQUIRE(gsqp_instance_load(path.c_str(), &loaded) == GSQP_OK);
  std::filesystem::remove(path);
  std::vector<double> xa(60), xb(60);
  REQUIRE(gsqp_instance_get_xbar(inst, xa.data(), 60) == GSQP_OK);
  REQUIRE(gsqp_instance_get_xbar(loaded, xb.data(), 60) == GSQP_OK);
  CHECK(xa == xb);
  gsqp_instance_info info;
  REQUIRE(gsqp_instance_get_info(loaded, &info) == GSQP_OK);
  CHECK(info.seed == 3);
  CHECK(info.cond == 1e2);
  CHECK(info.lipschitz > 0.0);
  for (gsqp_solver s : {GSQP_SOLVER_VEM, GSQP_SOLVER_PG, GSQP_SOLVER_FISTA, GSQP_SOLVER_FW}) {
    gsqp_qp_options opts;
    gsqp_qp_options_init(&opts);
    opts.solver = s;
    if (s == GSQP_SOLVER_FW) opts.max_iter = 2000;
    gsqp_solve_report rep;
    REQUIRE(gsqp_solve_qp(loaded, &opts, nullptr, 0, &rep) == GSQP_OK);
    CHECK(rep.equality_violation <= 1e-10);
    CHECK(rep.bound_violation == 0.0);
    if (s == GSQP_SOLVER_VEM) CHECK(rep.relerr <= 1e-8);
    if (s != GSQP_SOLVER_FW) CHECK(rep.relerr <= 1e-6);
  }
  gsqp_instance_free(loaded);
  gsqp_instance_free(inst);
}

TEST_CASE("projection through the C API") {
  gsqp_instance* inst = nullptr;
  REQUIRE(gsqp_instance_generate_projection(2000, 5, &inst) == GSQP_OK);
  gsqp_proj_options popts;
  gsqp_proj_options_init(&popts);
  std::vector<double> x(2000);
  gsqp_proj_report rep;
  REQUIRE(gsqp_project(inst, &popts, x.data(), x.size(), &rep) == GSQP_OK);
  CHECK(rep.relative_violation <= 1e-12);
  CHECK(rep.iterations <= 50);
  gsqp_instance_free(inst);

  const double p[2] = {2.0, 0.0}, lo[2] = {0.0, 0.0}, hi[2] = {1.0, 1.0};
  double y[2];
  REQUIRE(gsqp_project_point(2, p, lo, hi, 1.0, &popts, y, &rep) == GSQP_OK);
  CHECK(y[0] == doctest::Approx(1.0));
  CHECK(y[1] == doctest::Approx(0.0));
  CHECK(gsqp_project_point(2, p, lo, hi, 3.0, &popts, y, &rep) == GSQP_INFEASIBLE);
}

TEST_CASE("benchmarks and D-optimal design return owned strings") {
  const size_t sizes[1] = {1000};
  char* table = nullptr;
  char* asserts = nullptr;
  int ok = 0;
  REQUIRE(gsqp_bench_projection(sizes, 1, 1, 1, 1e-12, GSQP_FORMAT_CSV, &table, &asserts,
                                &ok) == GSQP_OK);
  CHECK(ok == 1);
  REQUIRE(table != nullptr);
  CHECK(std::string(table).rfind("n,", 0) == 0);
  gsqp_string_free(table);
  gsqp_string_free(asserts);

  gsqp_bench_qp_options q;
  gsqp_bench_qp_options_init(&q);
  const double conds[1] = {1e2}, ratios[1] = {0.2};
  const gsqp_solver solvers[1] = {GSQP_SOLVER_VEM};
  q.n = 50;
  q.conds = conds;
  q.num_conds = 1;
  q.ratios = ratios;
  q.num_ratios = 1;
  q.solvers = solvers;
  q.num_solvers = 1;
  REQUIRE(gsqp_bench_qp(&q, GSQP_FORMAT_MARKDOWN, &table, nullptr, &ok) == GSQP_OK);
  CHECK(std::string(table).find("relerr") != std::string::npos);
  gsqp_string_free(table);

  gsqp_dopt_options d;
  gsqp_dopt_options_init(&d);
  d.n = 80;
  d.p = 8;
  gsqp_dopt_report dr;
  REQUIRE(gsqp_dopt_run(&d, &dr) == GSQP_OK);
  CHECK(dr.final_lambda <= 1e-3);
  CHECK(dr.qp_time <= dr.total_time);
  d.p = 80;
  CHECK(gsqp_dopt_run(&d, &dr) == GSQP_INVALID_ARGUMENT);
}
