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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gsqp/instance_io.hpp"
#include "oracles.hpp"

using namespace gsqp;

namespace {

std::string serialize(const Instance& inst) {
  std::ostringstream os(std::ios::binary);
  write_instance(os, inst);
  return os.str();
}

}  // namespace

TEST_CASE("QP instances round-trip bit for bit") {
  QpInstanceSpec spec;
  spec.n = 40;
  spec.cond = 1e3;
  spec.ratio = 0.3;
  spec.seed = 8;
  const auto a = make_instance(gen_qp_instance(spec), spec);
  const std::string bytes = serialize(a);
  std::istringstream is(bytes, std::ios::binary);
  const Instance b = read_instance(is);
  CHECK(b.kind == InstanceKind::kQp);
  CHECK(b.c == a.c);
  REQUIRE(b.Q);
  CHECK(std::ranges::equal(b.Q->entries(), a.Q->entries()));
  REQUIRE(b.xbar);
  CHECK(*b.xbar == *a.xbar);
  CHECK(b.set.budget() == a.set.budget());
  CHECK(std::ranges::equal(b.set.lower(), a.set.lower()));
  CHECK(std::ranges::equal(b.set.upper(), a.set.upper()));
  CHECK(b.meta.seed == 8);
  CHECK(b.meta.cond == 1e3);
  CHECK(b.meta.lipschitz == a.meta.lipschitz);
  CHECK(serialize(b) == bytes);
  CHECK(serialize(make_instance(gen_qp_instance(spec), spec)) == bytes);
}

TEST_CASE("projection instances round-trip through a file") {
  const auto a = make_instance(gen_projection_instance(500, 4), 4);
  const auto path = (std::filesystem::temp_directory_path() / "gsqp_io_test.bin").string();
  write_instance(path, a);
  const Instance b = read_instance(path);
  std::filesystem::remove(path);
  CHECK(b.kind == InstanceKind::kProjection);
  CHECK_FALSE(b.Q);
  CHECK(b.projection_point() == a.projection_point());
  CHECK_THROWS_AS((void)b.qp_problem(), Error);
}

TEST_CASE("hand-made problems carry no metadata") {
  const QpProblem p(DenseSymmetricMatrix::identity(2), Vector{1.0, -1.0},
                    GeneralizedSimplex::unit_simplex(2));
  const auto inst = make_instance(p);
  std::istringstream is(serialize(inst), std::ios::binary);
  const auto back = read_instance(is);
  CHECK(back.meta.generator.empty());
  CHECK_FALSE(back.xbar);
  CHECK(back.qp_problem().objective(Vector{0.5, 0.5}) == p.objective(Vector{0.5, 0.5}));
}

TEST_CASE("corrupt input is reported as an I/O error") {
  const auto a = make_instance(gen_projection_instance(100, 1), 1);
  const std::string bytes = serialize(a);
  for (std::size_t cut : {std::size_t{0}, std::size_t{10}, bytes.size() / 2, bytes.size() - 1}) {
    std::istringstream is(bytes.substr(0, cut), std::ios::binary);
    try {
      (void)read_instance(is);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kIo);
    }
  }
  std::istringstream garbage("not json\n", std::ios::binary);
  CHECK_THROWS_AS((void)read_instance(garbage), Error);
  CHECK_THROWS_AS((void)read_instance(std::string("/nonexistent/dir/x.bin")), Error);
}
