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

#include "gsqp/objective.hpp"

#include <algorithm>
#include <cmath>

namespace gsqp {
namespace {

void check_size(std::span<const double> x, std::size_t n, const char* who) {
  if (x.size() != n) fail(ErrorCode::kDimensionMismatch, who);
}

}  // namespace

SquaredDistanceObjective::SquaredDistanceObjective(Vector target)
    : target_(std::move(target)) {}

double SquaredDistanceObjective::value(std::span<const double> x) const {
  check_size(x, size(), "SquaredDistanceObjective: size");
  const double d = distance2(x, target_);
  return 0.5 * d * d;
}

Vector SquaredDistanceObjective::gradient(std::span<const double> x) const {
  check_size(x, size(), "SquaredDistanceObjective: size");
  Vector g(x.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = x[i] - target_[i];
  return g;
}

DenseSymmetricMatrix SquaredDistanceObjective::hessian_element(
    std::span<const double>) const {
  return DenseSymmetricMatrix::identity(size());
}

QuadraticObjective::QuadraticObjective(DenseSymmetricMatrix Q, Vector c)
    : Q_(std::move(Q)), c_(std::move(c)) {
  if (Q_.size() != c_.size()) {
    fail(ErrorCode::kDimensionMismatch, "QuadraticObjective: Q and c sizes");
  }
}

double QuadraticObjective::value(std::span<const double> x) const {
  check_size(x, size(), "QuadraticObjective: size");
  return 0.5 * Q_.quadratic_form(x) + accurate_dot(c_, x);
}

Vector QuadraticObjective::gradient(std::span<const double> x) const {
  check_size(x, size(), "QuadraticObjective: size");
  Vector g = Q_.multiply(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += c_[i];
  return g;
}

DenseSymmetricMatrix QuadraticObjective::hessian_element(
    std::span<const double>) const {
  return Q_;
}

HingeQuadraticObjective::HingeQuadraticObjective(Vector target, Vector knee,
                                                 double kappa)
    : target_(std::move(target)), knee_(std::move(knee)), kappa_(kappa) {
  if (target_.size() != knee_.size()) {
    fail(ErrorCode::kDimensionMismatch, "HingeQuadraticObjective: sizes");
  }
  if (!(kappa_ >= 0.0)) {
    fail(ErrorCode::kInvalidArgument, "HingeQuadraticObjective: kappa < 0");
  }
}

double HingeQuadraticObjective::value(std::span<const double> x) const {
  check_size(x, size(), "HingeQuadraticObjective: size");
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - target_[i];
    const double h = std::max(0.0, x[i] - knee_[i]);
    v += 0.5 * d * d + 0.5 * kappa_ * h * h;
  }
  return v;
}

Vector HingeQuadraticObjective::gradient(std::span<const double> x) const {
  check_size(x, size(), "HingeQuadraticObjective: size");
  Vector g(x.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = x[i] - target_[i] + kappa_ * std::max(0.0, x[i] - knee_[i]);
  }
  return g;
}

DenseSymmetricMatrix HingeQuadraticObjective::hessian_element(
    std::span<const double> x) const {
  check_size(x, size(), "HingeQuadraticObjective: size");
  Vector d(x.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = x[i] > knee_[i] ? 1.0 + kappa_ : 1.0;
  }
  return DenseSymmetricMatrix::diagonal(d);
}

LogBarrierObjective::LogBarrierObjective(std::size_t n, double shift)
    : n_(n), shift_(shift) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "LogBarrierObjective: n = 0");
}

bool LogBarrierObjective::in_domain(std::span<const double> x) const {
  if (x.size() != n_) return false;
  for (double v : x) {
    if (!(v + shift_ > 0.0)) return false;
  }
  return true;
}

double LogBarrierObjective::value(std::span<const double> x) const {
  check_size(x, n_, "LogBarrierObjective: size");
  Vector terms(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double v = x[i] + shift_;
    if (!(v > 0.0)) {
      fail(ErrorCode::kDomainError, "LogBarrierObjective: x_i + shift <= 0");
    }
    terms[i] = -std::log(v);
  }
  return accurate_sum(terms);
}

Vector LogBarrierObjective::gradient(std::span<const double> x) const {
  check_size(x, n_, "LogBarrierObjective: size");
  Vector g(n_);
  for (std::size_t i = 0; i < n_; ++i) g[i] = -1.0 / (x[i] + shift_);
  return g;
}

DenseSymmetricMatrix LogBarrierObjective::hessian(
    std::span<const double> x) const {
  check_size(x, n_, "LogBarrierObjective: size");
  Vector d(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const double v = x[i] + shift_;
    d[i] = 1.0 / (v * v);
  }
  return DenseSymmetricMatrix::diagonal(d);
}

}  // namespace gsqp
