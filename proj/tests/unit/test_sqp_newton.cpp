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
#include <random>

#include "doctest.h"
#include "gsqp/gen.hpp"
#include "gsqp/proj.hpp"
#include "gsqp/sqp_newton.hpp"
#include "gsqp/vem.hpp"
#include "oracles.hpp"

using namespace gsqp;

namespace {

Vector random_vector(std::size_t n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (double& e : v) e = normal(rng);
  return v;
}

}  // namespace

TEST_CASE("natural map vanishes exactly at stationary points") {
  const auto set = GeneralizedSimplex::unit_simplex(3);
  const Vector t{0.2, 0.3, 0.5};
  CHECK(norm2(natural_map(SquaredDistanceObjective(t), t, set)) <= 1e-15);

  const QuadraticObjective linear(DenseSymmetricMatrix::diagonal(Vector(3, 0.0)),
                                  Vector{1.0, 2.0, 3.0});
  CHECK(norm2(natural_map(linear, Vector{0.0, 0.0, 1.0}, set)) > 0.1);
  CHECK(norm2(natural_map(linear, Vector{1.0, 0.0, 0.0}, set)) <= 1e-15);

  const std::size_t n = 7;
  const LogBarrierObjective barrier(n);
  const Vector centre(n, 1.0 / static_cast<double>(n));
  CHECK(norm2(natural_map(barrier, centre, GeneralizedSimplex::unit_simplex(n))) <= 1e-10);
}

TEST_CASE("squared distance converges to the projection of the target") {
  std::mt19937_64 rng(71);
  const std::size_t n = 40;
  const auto set = oracle::random_set(n, rng);
  const Vector t = random_vector(n, rng, 2.0);
  SqpTrace trace;
  const auto r = sqp_solve(SquaredDistanceObjective(t), Vector(n, 0.0), set, {}, &trace);
  CHECK(r.termination == Termination::kResidualConverged);
  CHECK(oracle::max_abs_diff(r.x, proj_generalized_simplex(t, set)) <= 1e-8);
  CHECK(trace.final_natural_residual <= 1e-8);
  // The model is f plus a proximal term eps_k/2 ||x - x^k||^2, so the first
  // inner solution is Proj_F(x^0 + (t - x^0) / (1 + eps_0)).
  REQUIRE_FALSE(trace.steps.empty());
  CHECK(trace.steps.size() <= 8);
}

TEST_CASE("quadratic objective matches VEM on the same data") {
  std::mt19937_64 rng(72);
  const std::size_t n = 25;
  const auto Q = oracle::random_spd(n, rng, 0.5, 4.0);
  const Vector c = random_vector(n, rng, 1.0);
  const auto set = oracle::random_set(n, rng);
  const QpProblem qp(Q, c, set);
  VemConfig vcfg;
  vcfg.tol = 1e-13;
  const auto ref = vem_solve(qp, StartPoint::auto_project(Vector(n, 0.0)), vcfg);
  const auto r = sqp_solve(QuadraticObjective(Q, c), Vector(n, 0.0), set);
  CHECK(r.termination == Termination::kResidualConverged);
  CHECK(oracle::max_abs_diff(r.x, ref.x) <= 1e-7);
}

TEST_CASE("shifted log barrier: residual decreases along accepted steps") {
  std::mt19937_64 rng(73);
  const std::size_t n = 30;
  const auto set = gen_projection_instance(n, 7).set;
  Vector start(n);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double& v : start) v = unif(rng);
  SqpTrace trace;
  const auto r = sqp_solve(LogBarrierObjective(n, 0.1), start, set, {}, &trace);
  CHECK(r.termination == Termination::kResidualConverged);
  CHECK(r.kkt_residual <= 1e-8);
  CHECK(set.contains(r.x));
  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    CHECK(trace.steps[k].f_pre <= trace.steps[k - 1].f_pre);
    if (trace.steps[k].full_step)
      CHECK(trace.steps[k].natural_residual <= trace.steps[k - 1].natural_residual);
  }
  for (const auto& s : trace.steps) {
    CHECK(s.model_value <= 1e-14);
    CHECK(s.eps > 0.0);
    if (!s.inner_at_floor) CHECK(s.inner_residual <= s.rho * s.natural_residual);
  }
}

TEST_CASE("hinge objective with a semismooth gradient") {
  std::mt19937_64 rng(74);
  const std::size_t n = 20;
  const auto set = oracle::random_set(n, rng);
  const Vector t = random_vector(n, rng, 1.0);
  const Vector knee = random_vector(n, rng, 0.3);
  const HingeQuadraticObjective f(t, knee, 5.0);
  const auto r = sqp_solve(f, Vector(n, 0.0), set);
  CHECK(r.termination == Termination::kResidualConverged);
  CHECK(norm2(natural_map(f, r.x, set)) <= 1e-8);
}

TEST_CASE("SQP configuration validation") {
  SqpConfig cfg;
  cfg.mu = 0.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.outer_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  const auto set = GeneralizedSimplex::unit_simplex(2);
  CHECK_THROWS_AS(sqp_solve(SquaredDistanceObjective(Vector{0.0, 0.0}), Vector{0.0}, set),
                  Error);
}
