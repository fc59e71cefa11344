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
#include "gsqp/dopt.hpp"
#include "gsqp/proj_newton.hpp"
#include "oracles.hpp"

using namespace gsqp;

TEST_CASE("h, its inverse and omega") {
  CHECK(h_func(0.0) == 0.0);
  CHECK(h_func(0.1) == doctest::Approx(0.082 / 0.638).epsilon(1e-15));
  CHECK(h_func(0.1) == doctest::Approx(0.128527).epsilon(1e-6));
  double prev = h_func(0.0);
  for (double t = 0.01; t < h_domain_end(); t += 0.01) {
    const double v = h_func(t);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS(h_func(-1.0), Error);
  CHECK_THROWS_AS(h_func(0.45), Error);
  CHECK(h_inverse(0.0) == 0.0);
  CHECK(std::abs(h_inverse(h_func(0.1)) - 0.1) <= 1e-12);
  CHECK(std::abs(h_func(h_inverse(0.04)) - 0.04) <= 1e-12);
  CHECK(std::abs(h_func(h_inverse(50.0)) - 50.0) <= 1e-10);

  CHECK(omega(0.0) == 0.0);
  CHECK(omega(1.0) == doctest::Approx(1.0 - std::log(2.0)).epsilon(1e-15));
  CHECK(omega(1.0) == doctest::Approx(0.306853).epsilon(1e-6));
  for (double t = 0.1; t < 5.0; t += 0.1) {
    CHECK(omega(t - 0.05) + omega(t + 0.05) >= 2.0 * omega(t));
  }
}

TEST_CASE("local norm") {
  CHECK(local_norm(DenseSymmetricMatrix::identity(3), Vector{1.0, 2.0, 2.0}) ==
        doctest::Approx(3.0));
  CHECK(local_norm(DenseSymmetricMatrix::identity(3), Vector(3, 0.0)) == 0.0);
  CHECK(local_norm(DenseSymmetricMatrix::diagonal(Vector{4.0, 1.0}), Vector{1.0, 1.0}) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
}

TEST_CASE("default configuration satisfies the coupling inequalities") {
  PnConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  const double b = cfg.beta;
  CHECK(1.0 / (cfg.C * (1 - b)) + b / ((1 - 2 * b) * (1 - b) * (1 - b)) <= cfg.sigma);
  CHECK(1.0 / cfg.C + 1.0 / (1 - 2 * b) <= 2.0);
  cfg.C = 1.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.beta = 0.06;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.C1 = 0.5;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("log barrier on the simplex: symmetric start stops at once") {
  const std::size_t n = 10;
  const auto set = GeneralizedSimplex::unit_simplex(n);
  const Vector centre(n, 0.1);
  PnTrace trace;
  const auto r = pn_solve(LogBarrierObjective(n), centre, set, {}, &trace);
  CHECK(oracle::max_abs_diff(r.x, centre) <= 1e-15);
  // Only the lambda schedule moves: 0.08 halves down to lambda_stop.
  CHECK(trace.steps.size() ==
        static_cast<std::size_t>(std::ceil(std::log2(0.04 / 0.5 / PnConfig{}.lambda_stop))));
  for (const auto& s : trace.steps) CHECK(s.gamma <= 1e-12);
}

TEST_CASE("log barrier from a random interior start reaches the centre") {
  std::mt19937_64 rng(81);
  const std::size_t n = 12;
  const auto set = GeneralizedSimplex::unit_simplex(n);
  std::uniform_real_distribution<double> unif(0.2, 1.0);
  Vector x0(n);
  double s = 0.0;
  for (double& v : x0) s += v = unif(rng);
  for (double& v : x0) v /= s;
  PnConfig cfg;
  cfg.lambda_stop = 1e-9;
  PnTrace trace;
  const auto r = pn_solve(LogBarrierObjective(n), x0, set, cfg, &trace);
  CHECK(oracle::max_abs_diff(r.x, Vector(n, 1.0 / n)) <= 1e-8);
  CHECK(trace.h_inverse_beta == doctest::Approx(h_inverse(cfg.beta)));
  REQUIRE_FALSE(trace.steps.empty());
  CHECK(trace.steps.front().xi ==
        doctest::Approx(std::min(cfg.beta / cfg.C, cfg.C1 * trace.h_inverse_beta)));
  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    const auto& a = trace.steps[k - 1];
    const auto& b = trace.steps[k];
    CHECK(b.lambda <= a.lambda);
    CHECK(b.xi <= a.xi);
    if (b.lambda < a.lambda) CHECK(b.lambda == doctest::Approx(cfg.sigma * a.lambda));
  }
  for (const auto& st : trace.steps) CHECK(st.certificate <= st.xi);
}

TEST_CASE("small D-optimal design converges with both subsolvers") {
  const auto A = generate_design_data(60, 6, 3);
  const DesignObjective f(A);
  const auto set = GeneralizedSimplex::unit_simplex(60);
  const Vector x0(60, 1.0 / 60.0);
  PnConfig cfg;
  PnTrace tv;
  const auto rv = pn_solve(f, x0, set, cfg, &tv);
  CHECK(tv.final_lambda <= cfg.lambda_stop);
  CHECK(set.contains(rv.x));
  CHECK(rv.objective <= f.value(x0));
  CHECK(tv.qp_seconds <= tv.total_seconds);
  cfg.subsolver = PnSubsolver::kFrankWolfe;
  try {
    PnTrace tf;
    const auto rf = pn_solve(f, x0, set, cfg, &tf);
    CHECK(std::abs(rf.objective - rv.objective) <= 1e-3 * std::abs(rv.objective) + 1e-3);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInnerSolverStall);
  }
}

TEST_CASE("start outside the domain is rejected") {
  const auto set = GeneralizedSimplex::unit_simplex(3);
  try {
    pn_solve(LogBarrierObjective(3), Vector{1.0, 0.0, 0.0}, set);
    CHECK(false);
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::kDomainViolation || e.code() == ErrorCode::kDomainError));
  }
}
