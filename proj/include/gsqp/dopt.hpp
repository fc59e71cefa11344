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

// D-optimal experimental design:
//
//   f(x) = -log det(A Diag(x) A^T),  A = [a_1 ... a_n] in R^{p x n}
//   grad f(x)   = -diag(B),   B = A^T M(x)^{-1} A,  M(x) = A Diag(x) A^T
//   hess f(x)   = B o B      (Hadamard square)

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "gsqp/core.hpp"
#include "gsqp/objective.hpp"

namespace gsqp {

/// Weights at or below this are left out of M(x).
inline constexpr double kDesignSkipTol = 1e-12;

class DesignProblem {
 public:
  /// `columns` is A stored column by column (a_1, ..., a_n), each of length
  /// p. Requires p < n and A A^T positive definite.
  DesignProblem(std::size_t p, std::size_t n, Vector columns);

  std::size_t rows() const noexcept { return p_; }
  std::size_t cols() const noexcept { return n_; }
  /// Column a_i.
  std::span<const double> column(std::size_t i) const noexcept {
    return {a_.data() + i * p_, p_};
  }
  std::span<const double> data() const noexcept { return a_; }

 private:
  std::size_t p_;
  std::size_t n_;
  Vector a_;
};

/// Throws kDomainError when x has a negative entry or M(x) is not positive
/// definite.
double dopt_value(const DesignProblem& problem, std::span<const double> x);
Vector dopt_gradient(const DesignProblem& problem, std::span<const double> x);
DenseSymmetricMatrix dopt_hessian(const DesignProblem& problem,
                                  std::span<const double> x);
/// Gradient and Hessian from a single factorization of M(x).
void dopt_derivatives(const DesignProblem& problem, std::span<const double> x,
                      Vector& gradient, DenseSymmetricMatrix& hessian);

/// Columns a_i drawn i.i.d. N(0, I_p), column by column, from stream
/// kDesign of `seed`.
DesignProblem generate_design_data(std::size_t n, std::size_t p,
                                   std::uint64_t seed);

class DesignObjective final : public SelfConcordantObjective {
 public:
  explicit DesignObjective(DesignProblem problem)
      : problem_(std::move(problem)) {}

  const DesignProblem& problem() const noexcept { return problem_; }
  std::size_t size() const override { return problem_.cols(); }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override {
    return dopt_value(problem_, x);
  }
  Vector gradient(std::span<const double> x) const override {
    return dopt_gradient(problem_, x);
  }
  DenseSymmetricMatrix hessian(std::span<const double> x) const override {
    return dopt_hessian(problem_, x);
  }
  void derivatives(std::span<const double> x, Vector& gradient_out,
                   DenseSymmetricMatrix& hessian_out) const override {
    dopt_derivatives(problem_, x, gradient_out, hessian_out);
  }

 private:
  DesignProblem problem_;
};

}  // namespace gsqp
