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

// Smooth objectives consumed by the Newton-type meta-solvers, plus a few
// built-in test functions.

#pragma once

#include <span>

#include "gsqp/core.hpp"

namespace gsqp {

/// Differentiable f whose gradient is semismooth. `hessian_element` returns
/// one element of the B-subdifferential of the gradient at x.
class Sc1Objective {
 public:
  virtual ~Sc1Objective() = default;
  virtual std::size_t size() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Vector gradient(std::span<const double> x) const = 0;
  virtual DenseSymmetricMatrix hessian_element(
      std::span<const double> x) const = 0;
};

/// Self-concordant f with an open domain. `value` throws kDomainError
/// outside the domain.
class SelfConcordantObjective {
 public:
  virtual ~SelfConcordantObjective() = default;
  virtual std::size_t size() const = 0;
  virtual bool in_domain(std::span<const double> x) const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Vector gradient(std::span<const double> x) const = 0;
  virtual DenseSymmetricMatrix hessian(std::span<const double> x) const = 0;
  /// Gradient and Hessian together; override when they share work.
  virtual void derivatives(std::span<const double> x, Vector& gradient_out,
                           DenseSymmetricMatrix& hessian_out) const {
    gradient_out = gradient(x);
    hessian_out = hessian(x);
  }
};

/// 1/2 ||x - target||^2
class SquaredDistanceObjective final : public Sc1Objective {
 public:
  explicit SquaredDistanceObjective(Vector target);
  std::size_t size() const override { return target_.size(); }
  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  DenseSymmetricMatrix hessian_element(
      std::span<const double> x) const override;

 private:
  Vector target_;
};

/// 1/2 x^T Q x + c^T x
class QuadraticObjective final : public Sc1Objective {
 public:
  QuadraticObjective(DenseSymmetricMatrix Q, Vector c);
  std::size_t size() const override { return c_.size(); }
  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  DenseSymmetricMatrix hessian_element(
      std::span<const double> x) const override;

 private:
  DenseSymmetricMatrix Q_;
  Vector c_;
};

/// 1/2 ||x - target||^2 + kappa/2 ||max(0, x - knee)||^2. The gradient is
/// piecewise linear, so the function is SC^1 but not twice differentiable.
/// At x_i = knee_i the element with the extra curvature switched off is
/// returned.
class HingeQuadraticObjective final : public Sc1Objective {
 public:
  HingeQuadraticObjective(Vector target, Vector knee, double kappa);
  std::size_t size() const override { return target_.size(); }
  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  DenseSymmetricMatrix hessian_element(
      std::span<const double> x) const override;

 private:
  Vector target_;
  Vector knee_;
  double kappa_;
};

/// -sum_i log(x_i + shift). Self-concordant on {x > -shift}; also usable as
/// an SC^1 objective on sets that stay inside that domain.
class LogBarrierObjective final : public Sc1Objective,
                                  public SelfConcordantObjective {
 public:
  LogBarrierObjective(std::size_t n, double shift = 0.0);
  std::size_t size() const override { return n_; }
  bool in_domain(std::span<const double> x) const override;
  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  DenseSymmetricMatrix hessian(std::span<const double> x) const override;
  DenseSymmetricMatrix hessian_element(
      std::span<const double> x) const override {
    return hessian(x);
  }

 private:
  std::size_t n_;
  double shift_;
};

}  // namespace gsqp
