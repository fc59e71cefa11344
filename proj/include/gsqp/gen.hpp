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

// Seeded random instances: projection problems and dense QPs with a planted
// optimum (x, y, z) satisfying the KKT system by construction.

#pragma once

#include <cstddef>
#include <cstdint>

#include "gsqp/core.hpp"

namespace gsqp {

struct ProjectionInstance {
  GeneralizedSimplex set;
  Vector point;  // the point to project
};

/// l = max(0, N(0,1)), u = l + U(0,1), b = sum(l + u) / 2, point = U(0,1),
/// drawn in that order from stream kProjection of `seed`.
ProjectionInstance gen_projection_instance(std::size_t n, std::uint64_t seed);

struct QpInstanceSpec {
  std::size_t n = 1000;
  double cond = 1e2;
  double ratio = 0.2;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedQp {
  QpProblem problem;
  Vector xbar;  // planted optimum
  double ybar = 0.0;
  Vector zbar;
  Vector d;  // eigenvalues of Q before Frobenius normalization
  double frobenius_scale = 1.0;  // ||U Diag(d) U^T||_F
  /// Seed actually used (differs from spec.seed after a degenerate retry).
  std::uint64_t effective_seed = 0;

  /// max(d) / ||U Diag(d) U^T||_F, the largest eigenvalue of Q.
  double lipschitz() const;
};

/// Q = U Diag(d) U^T / ||.||_F with U from the QR of a Gaussian matrix and d
/// integers in [1, cond] whose extremes are forced to 1 and cond. xbar is
/// U[-1, 1]^n, b = e^T xbar, bounds are tight on J_l = {xbar <= -ratio} and
/// J_u = {xbar >= ratio}, and c = -Q xbar + ybar e + zbar.
/// Retries with a derived seed (at most 10 times) when no coordinate is
/// strictly interior; throws kDegenerateInstance after that.
GeneratedQp gen_qp_instance(const QpInstanceSpec& spec);

}  // namespace gsqp
