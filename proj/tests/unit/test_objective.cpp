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

#include <random>

#include "doctest.h"
#include "gsqp/objective.hpp"
#include "oracles.hpp"

using namespace gsqp;

namespace {

Vector random_vector(std::size_t n, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> unif(lo, hi);
  Vector v(n);
  for (double& e : v) e = unif(rng);
  return v;
}

void check_gradient(const Sc1Objective& f, const Vector& x, double tol) {
  const Vector g = f.gradient(x);
  const auto value = [&](const Vector& y) { return f.value(y); };
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(oracle::central_difference(value, x, i, 1e-6) ==
          doctest::Approx(g[i]).epsilon(tol).scale(1.0));
  }
}

}  // namespace

TEST_CASE("squared distance derivatives") {
  const SquaredDistanceObjective f(Vector{1.0, -2.0});
  CHECK(f.value(Vector{0.0, 0.0}) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(f.gradient(Vector{0.0, 0.0}) == Vector{-1.0, 2.0});
  const auto H = f.hessian_element(Vector{3.0, 3.0});
  CHECK(H(0, 0) == 1.0);
  CHECK(H(0, 1) == 0.0);
  CHECK_THROWS_AS(f.value(Vector{1.0}), Error);
}

TEST_CASE("quadratic objective matches finite differences") {
  std::mt19937_64 rng(61);
  const std::size_t n = 8;
  const auto Q = oracle::random_spd(n, rng);
  const Vector c = random_vector(n, rng, -1.0, 1.0);
  const QuadraticObjective f(Q, c);
  const Vector x = random_vector(n, rng, -1.0, 1.0);
  check_gradient(f, x, 1e-7);
  const auto H = f.hessian_element(x);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(H(i, j) == Q(i, j));
}

TEST_CASE("hinge objective is piecewise quadratic") {
  const HingeQuadraticObjective f(Vector{0.0, 0.0}, Vector{0.5, 0.5}, 3.0);
  CHECK(f.value(Vector{1.0, 0.0}) == doctest::Approx(0.5 + 1.5 * 0.25));
  CHECK(f.gradient(Vector{1.0, 0.0}) == Vector{2.5, 0.0});
  const auto H = f.hessian_element(Vector{1.0, 0.0});
  CHECK(H(0, 0) == 4.0);
  CHECK(H(1, 1) == 1.0);
  std::mt19937_64 rng(62);
  const HingeQuadraticObjective g(random_vector(6, rng, -1, 1), random_vector(6, rng, -1, 1), 2.0);
  check_gradient(g, random_vector(6, rng, -1, 1), 1e-7);
  CHECK_THROWS_AS(HingeQuadraticObjective(Vector{0.0}, Vector{0.0}, -1.0), Error);
}

TEST_CASE("log barrier values, derivatives and domain") {
  const LogBarrierObjective f(2);
  CHECK(f.value(Vector{1.0, 1.0}) == 0.0);
  CHECK(f.gradient(Vector{0.5, 0.25}) == Vector{-2.0, -4.0});
  const auto H = f.hessian(Vector{0.5, 0.25});
  CHECK(H(0, 0) == 4.0);
  CHECK(H(1, 1) == 16.0);
  CHECK(H(0, 1) == 0.0);
  CHECK(f.in_domain(Vector{0.1, 0.2}));
  CHECK_FALSE(f.in_domain(Vector{0.0, 0.2}));
  CHECK_FALSE(f.in_domain(Vector{0.1}));
  try {
    (void)f.value(Vector{0.0, 1.0});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDomainError);
  }
  const LogBarrierObjective shifted(3, 0.1);
  CHECK(shifted.in_domain(Vector{0.0, 0.0, 0.0}));
  std::mt19937_64 rng(63);
  check_gradient(shifted, random_vector(3, rng, 0.2, 1.0), 1e-7);
}
