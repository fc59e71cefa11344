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
#include "gsqp/core.hpp"
#include "oracles.hpp"

using namespace gsqp;

namespace {

GeneralizedSimplex box01(std::size_t n, double b) {
  return GeneralizedSimplex(b, Vector(n, 0.0), Vector(n, 1.0));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::kIo;
}

}  // namespace

TEST_CASE("active sets use exact membership at tol 0") {
  const auto set = box01(3, 1.5);
  const auto j = active_sets(Vector{0.0, 0.5, 1.0}, set, 0.0);
  CHECK(j.lower == std::vector<std::size_t>{0});
  CHECK(j.upper == std::vector<std::size_t>{2});

  const auto inner = active_sets(Vector{0.5, 0.5}, box01(2, 1.0), 0.0);
  CHECK(inner.lower.empty());
  CHECK(inner.upper.empty());
}

TEST_CASE("active set tolerance absorbs rounding") {
  const auto j = active_sets(Vector{1e-13, 1.0}, box01(2, 1.0), 1e-12);
  CHECK(j.lower == std::vector<std::size_t>{0});
  CHECK(j.upper == std::vector<std::size_t>{1});
}

TEST_CASE("kkt residual of the identity QP at a vertex") {
  const QpProblem p(DenseSymmetricMatrix::identity(2), Vector{0.0, 0.0},
                    GeneralizedSimplex::unit_simplex(2));
  CHECK(kkt_residual(p, Vector{1.0, 0.0}) == doctest::Approx(std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(kkt_residual(p, Vector{0.5, 0.5}) <= 1e-15);
}

TEST_CASE("kkt residual vanishes when the gradient is a multiple of e") {
  // Q x + c = 3 e at x = (0.2, 0.3, 0.5)
  const Vector x{0.2, 0.3, 0.5};
  const auto Q = DenseSymmetricMatrix::diagonal(Vector{2.0, 1.0, 4.0});
  const Vector c{3.0 - 0.4, 3.0 - 0.3, 3.0 - 2.0};
  const QpProblem p(Q, c, box01(3, 1.0));
  CHECK(kkt_residual(p, x) <= 1e-15);
}

TEST_CASE("preprocess fixes forced variables") {
  const GeneralizedSimplex set(1.5, Vector{0.0, 1.0}, Vector{1.0, 1.0});
  const auto pre = preprocess(set);
  REQUIRE(pre.kind == Preprocessed::Kind::kReduced);
  CHECK(pre.fixed_indices == std::vector<std::size_t>{1});
  CHECK(pre.fixed_values == Vector{1.0});
  CHECK(pre.free_indices == std::vector<std::size_t>{0});
  CHECK(pre.reduced_set().budget() == doctest::Approx(0.5));
  CHECK(pre.expand(Vector{0.5}) == Vector{0.5, 1.0});
}

TEST_CASE("preprocess detects the singleton and infeasible budgets") {
  const auto pre = preprocess(box01(2, 2.0));
  REQUIRE(pre.kind == Preprocessed::Kind::kSingleton);
  CHECK(pre.singleton_point == Vector{1.0, 1.0});
  CHECK(code_of([] { preprocess(box01(2, 3.0)); }) == ErrorCode::kInfeasible);
}

TEST_CASE("preprocess is idempotent") {
  const GeneralizedSimplex set(2.0, Vector{0.0, 1.0, -1.0, 0.5},
                               Vector{1.0, 1.0, 2.0, 0.5});
  const auto once = preprocess(set);
  REQUIRE(once.kind == Preprocessed::Kind::kReduced);
  const auto twice = preprocess(once.reduced_set());
  CHECK(twice.fixed_indices.empty());
  CHECK(twice.reduced_set().budget() == once.reduced_set().budget());
  CHECK(std::ranges::equal(twice.reduced_set().lower(), once.reduced_set().lower()));
  CHECK(std::ranges::equal(twice.reduced_set().upper(), once.reduced_set().upper()));
}

TEST_CASE("reduce_problem folds fixed coordinates into c") {
  const GeneralizedSimplex set(1.5, Vector{0.0, 1.0}, Vector{1.0, 1.0});
  const DenseSymmetricMatrix Q(2, Vector{2.0, 1.0, 1.0, 3.0});
  const QpProblem p(Q, Vector{0.5, -1.0}, set);
  const auto pre = preprocess(set);
  const QpProblem r = reduce_problem(p, pre);
  REQUIRE(r.size() == 1);
  CHECK(r.Q(0, 0) == 2.0);
  CHECK(r.c[0] == doctest::Approx(1.5));
}

TEST_CASE("matrix construction enforces exact symmetry") {
  CHECK(code_of([] { DenseSymmetricMatrix(2, Vector{1.0, 2.0, 2.0 + 1e-16 * 8, 1.0}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { DenseSymmetricMatrix(2, Vector{1.0, 2.0}); }) ==
        ErrorCode::kDimensionMismatch);
  const auto s = DenseSymmetricMatrix::symmetrized(2, Vector{1.0, 2.0, 4.0, 1.0});
  CHECK(s(0, 1) == 3.0);
  CHECK(s(1, 0) == 3.0);
}

TEST_CASE("matrix products agree with Eigen") {
  std::mt19937_64 rng(7);
  const auto Q = oracle::random_spd(9, rng);
  Eigen::MatrixXd E(9, 9);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) E(i, j) = Q(i, j);
  Vector x(9);
  std::normal_distribution<double> normal;
  for (double& v : x) v = normal(rng);
  const Eigen::VectorXd ex = Eigen::Map<const Eigen::VectorXd>(x.data(), 9);
  const Eigen::VectorXd ey = E * ex;
  const Vector y = Q.multiply(x);
  for (std::size_t i = 0; i < 9; ++i) CHECK(y[i] == doctest::Approx(ey(i)).epsilon(1e-13));
  CHECK(Q.quadratic_form(x) == doctest::Approx(ex.dot(ey)).epsilon(1e-13));
  CHECK(Q.frobenius_norm() == doctest::Approx(E.norm()).epsilon(1e-14));
  for (std::size_t j = 0; j < 9; ++j) {
    const auto col = Q.column(j);
    for (std::size_t i = 0; i < 9; ++i) CHECK(col[i] == Q(i, j));
  }
  const auto S = Q.shifted(2.5);
  CHECK(S(3, 3) == Q(3, 3) + 2.5);
  CHECK(S(3, 4) == Q(3, 4));
}

TEST_CASE("feasible-set validation and assumption checks") {
  CHECK(code_of([] { GeneralizedSimplex(1.0, Vector{0.0}, Vector{1.0, 2.0}); }) ==
        ErrorCode::kDimensionMismatch);
  CHECK(code_of([] { GeneralizedSimplex(1.0, Vector{1.0}, Vector{0.0}); }) ==
        ErrorCode::kInfeasible);
  CHECK(code_of([] { GeneralizedSimplex(NAN, Vector{0.0}, Vector{1.0}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(code_of([] { box01(2, 2.0).require_assumption(); }) == ErrorCode::kInfeasible);
  const GeneralizedSimplex fixed(1.0, Vector{0.0, 0.5}, Vector{1.0, 0.5});
  CHECK_FALSE(fixed.satisfies_assumption());
  CHECK(code_of([&] { fixed.require_assumption(); }) == ErrorCode::kDegenerate);
  CHECK(GeneralizedSimplex::unit_simplex(4).satisfies_assumption());
}

TEST_CASE("feasibility tolerances") {
  const auto set = box01(2, 1.0);
  CHECK(set.contains(Vector{0.5, 0.5}));
  CHECK(set.contains(Vector{1.0 + 1e-15, -1e-15}));
  CHECK_FALSE(set.contains(Vector{1.0 + 1e-13, -1e-13}));
  CHECK_FALSE(set.contains(Vector{0.5, 0.5 + 1e-9}));
  CHECK(set.equality_violation(Vector{0.5, 0.6}) == doctest::Approx(0.1));
  CHECK(set.bound_violation(Vector{1.25, -0.25}) == doctest::Approx(0.25));
}

TEST_CASE("weighted constraints map onto the generalized simplex") {
  const auto set = GeneralizedSimplex::from_weighted(Vector{2.0, -1.0}, 1.0, Vector{0.0, 0.0},
                                                     Vector{1.0, 3.0});
  CHECK(std::ranges::equal(set.lower(), Vector{0.0, -3.0}));
  CHECK(std::ranges::equal(set.upper(), Vector{2.0, 0.0}));
  CHECK(code_of([] {
          GeneralizedSimplex::from_weighted(Vector{0.0}, 1.0, Vector{0.0}, Vector{1.0});
        }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("compensated sum resolves cancellation") {
  Vector v{1e16, 1.0, -1e16, 1.0};
  CHECK(accurate_sum(v) == 2.0);
  Vector ones(1'000'000, 0.1);
  CHECK(std::abs(accurate_sum(ones) - 100000.0) <= 1e-9);
}

TEST_CASE("certificate check uses the documented sign pattern") {
  const QpProblem p(DenseSymmetricMatrix::identity(2), Vector{0.0, 0.0},
                    GeneralizedSimplex(1.0, Vector{0.0, 0.0}, Vector{1.0, 0.3}));
  // Optimum (0.7, 0.3): g = (0.7, 0.3), y = 0.7, z = (0, -0.4) on J_u.
  KktCertificate good{{0.7, 0.3}, 0.7, {0.0, -0.4}};
  CHECK(kkt_certificate_violation(p, good, 1e-12) <= 1e-15);
  KktCertificate bad{{0.7, 0.3}, 0.3, {0.4, 0.0}};
  CHECK(kkt_certificate_violation(p, bad, 1e-12) >= 0.39);
}
