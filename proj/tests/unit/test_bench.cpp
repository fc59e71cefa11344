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

#include <set>

#include "doctest.h"
#include "gsqp/bench.hpp"
#include "oracles.hpp"

using namespace gsqp;

TEST_CASE("projection table rows and CSV layout") {
  ProjectionTableConfig cfg;
  cfg.sizes = {1000, 5000};
  cfg.seeds_per_size = 2;
  const auto t = run_projection_table(cfg);
  REQUIRE(t.rows.size() == 4);
  CHECK(all_passed(t.assertions));
  for (const auto& r : t.rows) {
    CHECK(r.relative_violation <= 1e-12);
    CHECK(r.iterations <= 50);
  }
  const auto csv = oracle::parse_csv(format_projection_table(t, TableFormat::kCsv));
  REQUIRE(csv.size() == 5);
  CHECK(csv[0][0] == "n");
  CHECK(csv[1][0] == "1000");
  CHECK(csv[4][0] == "5000");
  for (const auto& row : csv) CHECK(row.size() == csv[0].size());

  cfg.sizes.clear();
  const auto empty = run_projection_table(cfg);
  CHECK(empty.rows.empty());
  CHECK(oracle::parse_csv(format_projection_table(empty, TableFormat::kCsv)).size() == 1);
  const auto md = format_projection_table(t, TableFormat::kMarkdown);
  CHECK(md.find("| n |") != std::string::npos);
}

TEST_CASE("cell seeds are distinct and reproducible") {
  std::set<std::uint64_t> seen;
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t r = 0; r < 4; ++r) seen.insert(qp_cell_seed(1, c, r));
  CHECK(seen.size() == 16);
  CHECK(qp_cell_seed(1, 2, 3) == qp_cell_seed(1, 2, 3));
  CHECK(qp_cell_seed(1, 2, 3) != qp_cell_seed(2, 2, 3));
}

TEST_CASE("a one-cell QP table is deterministic") {
  QpTableConfig cfg;
  cfg.n = 60;
  cfg.conds = {1e2};
  cfg.ratios = {0.4};
  cfg.solvers = {QpSolverKind::kVem, QpSolverKind::kFw};
  cfg.fw_max_iter = 200;
  cfg.fw_relerr_min = 0.0;
  const auto a = run_qp_table(cfg);
  const auto b = run_qp_table(cfg);
  REQUIRE(a.cells.size() == 2);
  CHECK(a.cells[0].solver == QpSolverKind::kVem);
  CHECK(a.cells[0].relerr <= 1e-8);
  CHECK(a.cells[0].relerr == b.cells[0].relerr);
  CHECK(a.cells[1].relerr == b.cells[1].relerr);
  CHECK(a.cells[0].seed == qp_cell_seed(cfg.seed, 0, 0));
  const auto csv = oracle::parse_csv(format_qp_table(a, TableFormat::kCsv));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0].size() == 4);
  CHECK(csv[1][1] == "relerr");
  CHECK(csv[2][1] == "time");
}

TEST_CASE("solver names parse") {
  CHECK(parse_qp_solver("vem") == QpSolverKind::kVem);
  CHECK(parse_qp_solver("fista") == QpSolverKind::kFista);
  CHECK(std::string(to_string(QpSolverKind::kFw)) == "fw");
  CHECK_THROWS_AS(parse_qp_solver("simplex"), Error);
  CHECK(parse_pn_subsolver("fw") == PnSubsolver::kFrankWolfe);
  CHECK_THROWS_AS(parse_pn_subsolver("x"), Error);
}

TEST_CASE("a small D-optimal case reports consistent timings") {
  const auto row = run_dopt_case(120, 12, 2, PnSubsolver::kVem, 1e-3);
  CHECK(row.status == "converged");
  CHECK(row.final_lambda <= 1e-3);
  CHECK(row.qp_seconds <= row.total_seconds);
  CHECK(row.outer_iterations >= 1);
  DoptTable t;
  t.rows.push_back(row);
  const auto csv = oracle::parse_csv(format_dopt_table(t, TableFormat::kCsv));
  REQUIRE(csv.size() == 2);
  CHECK(csv[1][0] == "120");
  CHECK(csv[1][2] == "vem");
}

TEST_CASE("assertion summary") {
  std::vector<BenchAssertion> as{{"a", true, ""}, {"b", false, "x"}};
  CHECK_FALSE(all_passed(as));
  const auto s = format_assertions(as);
  CHECK(s.find("b") != std::string::npos);
  as.pop_back();
  CHECK(all_passed(as));
}
