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

// Feasible-set and problem types shared by every solver:
//
//   F = { x in R^n : e^T x = b, lower <= x <= upper }
//   q(x) = 1/2 x^T Q x + c^T x,  Q symmetric positive definite.

#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gsqp/errors.hpp"

namespace gsqp {

using Vector = std::vector<double>;

/// Relative tolerance on |e^T x - b| used by every feasibility check.
inline constexpr double kEqualityRelTol = 1e-10;
/// Absolute slack allowed on the box constraints.
inline constexpr double kBoundAbsTol = 1e-14;
/// Gap u_i - l_i at or below which a coordinate is treated as fixed.
inline constexpr double kFixedGapTol = 1e-14;

// Compensated (Neumaier) reductions. Budget sums over 1e6+ coordinates
// need them to resolve 1e-12 relative violations.
double accurate_sum(std::span<const double> v);
double accurate_dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double distance2(std::span<const double> a, std::span<const double> b);

class GeneralizedSimplex {
 public:
  /// Requires equal lengths, finite data and lower <= upper. Assumption
  /// checks (strict gaps, e^T l < b < e^T u) are separate so that
  /// `preprocess` can accept sets with fixed coordinates.
  GeneralizedSimplex(double b, Vector lower, Vector upper);

  /// Standard simplex: b = 1, 0 <= x <= 1.
  static GeneralizedSimplex unit_simplex(std::size_t n);

  /// Maps {a^T x = b, lo <= x <= hi} with every a_i != 0 onto this form
  /// through x' = Diag(a) x. Throws kInvalidArgument if some a_i == 0.
  static GeneralizedSimplex from_weighted(std::span<const double> a, double b,
                                          std::span<const double> lower,
                                          std::span<const double> upper);

  std::size_t size() const noexcept { return lower_.size(); }
  double budget() const noexcept { return b_; }
  std::span<const double> lower() const noexcept { return lower_; }
  std::span<const double> upper() const noexcept { return upper_; }
  double lower_sum() const noexcept { return lower_sum_; }
  double upper_sum() const noexcept { return upper_sum_; }

  /// Strict gaps and e^T l < b < e^T u.
  bool satisfies_assumption() const noexcept;
  /// Throws kInfeasible (empty / singleton set) or kDegenerate (fixed
  /// coordinates) when `satisfies_assumption()` is false.
  void require_assumption() const;

  /// Feasibility within kEqualityRelTol / kBoundAbsTol.
  bool contains(std::span<const double> x) const;
  double equality_violation(std::span<const double> x) const;
  double bound_violation(std::span<const double> x) const;

 private:
  double b_;
  Vector lower_;
  Vector upper_;
  double lower_sum_;
  double upper_sum_;
};

/// Dense n x n symmetric matrix, row-major. Column j is read as row j.
class DenseSymmetricMatrix {
 public:
  DenseSymmetricMatrix() = default;
  /// Throws kInvalidArgument unless entries is n*n and exactly symmetric.
  DenseSymmetricMatrix(std::size_t n, Vector entries);

  /// Replaces entries by (A + A^T) / 2 before storing.
  static DenseSymmetricMatrix symmetrized(std::size_t n, Vector entries);
  static DenseSymmetricMatrix identity(std::size_t n);
  static DenseSymmetricMatrix diagonal(std::span<const double> d);

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }
  std::span<const double> column(std::size_t j) const noexcept {
    return {entries_.data() + j * n_, n_};
  }
  std::span<const double> entries() const noexcept { return entries_; }

  /// out = Q x
  void multiply(std::span<const double> x, std::span<double> out) const;
  Vector multiply(std::span<const double> x) const;
  double quadratic_form(std::span<const double> x) const;
  double frobenius_norm() const;

  /// this + shift * I
  DenseSymmetricMatrix shifted(double shift) const;

 private:
  std::size_t n_ = 0;
  Vector entries_;
};

struct QpProblem {
  DenseSymmetricMatrix Q;
  Vector c;
  GeneralizedSimplex feasible_set;

  /// Throws kDimensionMismatch when the three sizes disagree.
  QpProblem(DenseSymmetricMatrix q, Vector c_in, GeneralizedSimplex set);

  std::size_t size() const noexcept { return c.size(); }
  double objective(std::span<const double> x) const;
  Vector gradient(std::span<const double> x) const;
};

enum class Termination {
  kGapConverged,
  kResidualConverged,
  kUserErrorConverged,
  kMaxIterations,
  kTimeLimit,
  // The exchange step underflowed: x no longer changes in floating point.
  kStagnated,
};

const char* to_string(Termination t);

struct SolveReport {
  Vector x;
  double objective = 0.0;
  std::size_t iterations = 0;
  Termination termination = Termination::kMaxIterations;
  double kkt_residual = 0.0;
  std::chrono::duration<double> wall_time{0.0};
};

/// Primal point with the equality multiplier y and bound multipliers z of
///   -Q x + y e + z = c,  z >= 0 on J_l(x), z <= 0 on J_u(x), 0 elsewhere.
struct KktCertificate {
  Vector x;
  double y = 0.0;
  Vector z;
};

/// Largest violation of the certificate's stationarity and sign conditions.
double kkt_certificate_violation(const QpProblem& problem,
                                 const KktCertificate& cert, double tol);

struct ActiveSets {
  std::vector<std::size_t> lower;
  std::vector<std::size_t> upper;
};

/// J_l = {i : x_i <= l_i + tol}, J_u = {i : x_i >= u_i - tol}.
ActiveSets active_sets(std::span<const double> x, const GeneralizedSimplex& set,
                       double tol);

/// ||x - Proj_F(x - Qx - c)|| / (1 + ||x||), exact projection.
double kkt_residual(const QpProblem& problem, std::span<const double> x);
/// Same, with the gradient Qx + c already at hand.
double kkt_residual_from_gradient(const GeneralizedSimplex& set,
                                  std::span<const double> x,
                                  std::span<const double> gradient);

struct Preprocessed {
  enum class Kind { kReduced, kSingleton };
  Kind kind = Kind::kReduced;
  std::size_t full_size = 0;
  std::vector<std::size_t> free_indices;
  std::vector<std::size_t> fixed_indices;
  Vector fixed_values;
  /// Valid for kReduced only.
  std::vector<GeneralizedSimplex> reduced;  // zero or one element
  /// Valid for kSingleton: the unique feasible point.
  Vector singleton_point;

  const GeneralizedSimplex& reduced_set() const { return reduced.at(0); }
  /// Scatters a reduced-space point back into R^full_size.
  Vector expand(std::span<const double> reduced_x) const;
};

/// Drops coordinates with u_i - l_i <= kFixedGapTol and detects the
/// singleton cases e^T l = b or e^T u = b. Throws kInfeasible when
/// e^T l > b or e^T u < b.
Preprocessed preprocess(const GeneralizedSimplex& set);

/// QP restricted to the free coordinates of `pre`: Q_FF and
/// c_F + Q_{F,fixed} x_fixed.
QpProblem reduce_problem(const QpProblem& problem, const Preprocessed& pre);

}  // namespace gsqp
