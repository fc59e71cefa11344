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

#include "gsqp/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsqp/proj.hpp"

namespace gsqp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kDegenerate: return "Degenerate";
    case ErrorCode::kNonPositiveCurvature: return "NonPositiveCurvature";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kDomainViolation: return "DomainViolation";
    case ErrorCode::kInnerSolverStall: return "InnerSolverStall";
    case ErrorCode::kLineSearchFail: return "LineSearchFail";
    case ErrorCode::kNegativeQuadraticForm: return "NegativeQuadraticForm";
    case ErrorCode::kDegenerateInstance: return "DegenerateInstance";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::kGapConverged: return "GapConverged";
    case Termination::kResidualConverged: return "ResidualConverged";
    case Termination::kUserErrorConverged: return "UserErrorConverged";
    case Termination::kMaxIterations: return "MaxIterations";
    case Termination::kTimeLimit: return "TimeLimit";
    case Termination::kStagnated: return "Stagnated";
  }
  return "Unknown";
}

namespace {

struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": size " << a << " vs " << b;
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
}

}  // namespace

double accurate_sum(std::span<const double> v) {
  Neumaier acc;
  for (double x : v) acc.add(x);
  return acc.value();
}

double accurate_dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "dot");
  Neumaier acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

double norm2(std::span<const double> v) {
  // Scaled to avoid overflow on huge entries.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (double x : v) {
    const double r = x / scale;
    s += r * r;
  }
  return scale * std::sqrt(s);
}

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double distance2(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size(), "distance");
  Vector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return norm2(d);
}

// ---------------------------------------------------------------------------
// GeneralizedSimplex

GeneralizedSimplex::GeneralizedSimplex(double b, Vector lower, Vector upper)
    : b_(b), lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_size(lower_.size(), upper_.size(), "GeneralizedSimplex bounds");
  if (lower_.empty()) {
    fail(ErrorCode::kInvalidArgument, "GeneralizedSimplex: empty dimension");
  }
  if (!std::isfinite(b_)) {
    fail(ErrorCode::kInvalidArgument, "GeneralizedSimplex: non-finite budget");
  }
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      fail(ErrorCode::kInvalidArgument, "GeneralizedSimplex: non-finite bound");
    }
    if (lower_[i] > upper_[i]) {
      std::ostringstream os;
      os << "GeneralizedSimplex: lower > upper at index " << i;
      fail(ErrorCode::kInfeasible, os.str());
    }
  }
  lower_sum_ = accurate_sum(lower_);
  upper_sum_ = accurate_sum(upper_);
}

GeneralizedSimplex GeneralizedSimplex::unit_simplex(std::size_t n) {
  return GeneralizedSimplex(1.0, Vector(n, 0.0), Vector(n, 1.0));
}

GeneralizedSimplex GeneralizedSimplex::from_weighted(
    std::span<const double> a, double b, std::span<const double> lower,
    std::span<const double> upper) {
  require_same_size(a.size(), lower.size(), "from_weighted");
  require_same_size(a.size(), upper.size(), "from_weighted");
  Vector lo(a.size()), hi(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) {
      fail(ErrorCode::kInvalidArgument, "from_weighted: zero weight");
    }
    const double p = a[i] * lower[i];
    const double q = a[i] * upper[i];
    lo[i] = std::min(p, q);
    hi[i] = std::max(p, q);
  }
  return GeneralizedSimplex(b, std::move(lo), std::move(hi));
}

bool GeneralizedSimplex::satisfies_assumption() const noexcept {
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) return false;
  }
  return lower_sum_ < b_ && b_ < upper_sum_;
}

void GeneralizedSimplex::require_assumption() const {
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      std::ostringstream os;
      os << "fixed coordinate " << i << " (lower == upper); preprocess first";
      fail(ErrorCode::kDegenerate, os.str());
    }
  }
  if (!(lower_sum_ < b_ && b_ < upper_sum_)) {
    std::ostringstream os;
    os.precision(17);
    os << "need e^T l < b < e^T u, got " << lower_sum_ << " / " << b_ << " / "
       << upper_sum_;
    fail(ErrorCode::kInfeasible, os.str());
  }
}

double GeneralizedSimplex::equality_violation(std::span<const double> x) const {
  require_same_size(x.size(), size(), "equality_violation");
  return std::abs(accurate_sum(x) - b_);
}

double GeneralizedSimplex::bound_violation(std::span<const double> x) const {
  require_same_size(x.size(), size(), "bound_violation");
  double v = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    v = std::max(v, lower_[i] - x[i]);
    v = std::max(v, x[i] - upper_[i]);
  }
  return v;
}

bool GeneralizedSimplex::contains(std::span<const double> x) const {
  if (x.size() != size()) return false;
  return equality_violation(x) <= kEqualityRelTol * std::max(1.0, std::abs(b_)) &&
         bound_violation(x) <= kBoundAbsTol;
}

// ---------------------------------------------------------------------------
// DenseSymmetricMatrix

DenseSymmetricMatrix::DenseSymmetricMatrix(std::size_t n, Vector entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * n) {
    fail(ErrorCode::kDimensionMismatch, "DenseSymmetricMatrix: need n*n entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (entries_[i * n + j] != entries_[j * n + i]) {
        std::ostringstream os;
        os << "DenseSymmetricMatrix: asymmetric at (" << i << "," << j << ")";
        fail(ErrorCode::kInvalidArgument, os.str());
      }
    }
  }
}

DenseSymmetricMatrix DenseSymmetricMatrix::symmetrized(std::size_t n,
                                                       Vector entries) {
  if (entries.size() != n * n) {
    fail(ErrorCode::kDimensionMismatch, "symmetrized: need n*n entries");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = 0.5 * (entries[i * n + j] + entries[j * n + i]);
      entries[i * n + j] = m;
      entries[j * n + i] = m;
    }
  }
  return DenseSymmetricMatrix(n, std::move(entries));
}

DenseSymmetricMatrix DenseSymmetricMatrix::identity(std::size_t n) {
  Vector e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return DenseSymmetricMatrix(n, std::move(e));
}

DenseSymmetricMatrix DenseSymmetricMatrix::diagonal(std::span<const double> d) {
  const std::size_t n = d.size();
  Vector e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = d[i];
  return DenseSymmetricMatrix(n, std::move(e));
}

void DenseSymmetricMatrix::multiply(std::span<const double> x,
                                    std::span<double> out) const {
  require_same_size(x.size(), n_, "multiply");
  require_same_size(out.size(), n_, "multiply");
  for (std::size_t i = 0; i < n_; ++i) {
    const double* row = entries_.data() + i * n_;
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
    out[i] = s;
  }
}

Vector DenseSymmetricMatrix::multiply(std::span<const double> x) const {
  Vector out(n_);
  multiply(x, out);
  return out;
}

double DenseSymmetricMatrix::quadratic_form(std::span<const double> x) const {
  const Vector qx = multiply(x);
  return accurate_dot(x, qx);
}

double DenseSymmetricMatrix::frobenius_norm() const { return norm2(entries_); }

DenseSymmetricMatrix DenseSymmetricMatrix::shifted(double shift) const {
  Vector e = entries_;
  for (std::size_t i = 0; i < n_; ++i) e[i * n_ + i] += shift;
  DenseSymmetricMatrix m;
  m.n_ = n_;
  m.entries_ = std::move(e);
  return m;
}

// ---------------------------------------------------------------------------
// QpProblem

QpProblem::QpProblem(DenseSymmetricMatrix q, Vector c_in, GeneralizedSimplex set)
    : Q(std::move(q)), c(std::move(c_in)), feasible_set(std::move(set)) {
  require_same_size(Q.size(), c.size(), "QpProblem Q/c");
  require_same_size(c.size(), feasible_set.size(), "QpProblem c/set");
}

double QpProblem::objective(std::span<const double> x) const {
  const Vector qx = Q.multiply(x);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * (0.5 * qx[i] + c[i]);
  return s;
}

Vector QpProblem::gradient(std::span<const double> x) const {
  Vector g = Q.multiply(x);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += c[i];
  return g;
}

double kkt_certificate_violation(const QpProblem& problem,
                                 const KktCertificate& cert, double tol) {
  const auto& set = problem.feasible_set;
  const std::size_t n = problem.size();
  require_same_size(cert.x.size(), n, "certificate x");
  require_same_size(cert.z.size(), n, "certificate z");
  double worst = set.equality_violation(cert.x);
  worst = std::max(worst, set.bound_violation(cert.x));
  const Vector qx = problem.Q.multiply(cert.x);
  const auto lo = set.lower();
  const auto hi = set.upper();
  for (std::size_t i = 0; i < n; ++i) {
    // -Qx + y e + z = c
    worst = std::max(worst, std::abs(-qx[i] + cert.y + cert.z[i] - problem.c[i]));
    const bool at_lower = cert.x[i] <= lo[i] + tol;
    const bool at_upper = cert.x[i] >= hi[i] - tol;
    if (at_lower && !at_upper) {
      worst = std::max(worst, -cert.z[i]);
    } else if (at_upper && !at_lower) {
      worst = std::max(worst, cert.z[i]);
    } else if (!at_lower && !at_upper) {
      worst = std::max(worst, std::abs(cert.z[i]));
    }
  }
  return worst;
}

ActiveSets active_sets(std::span<const double> x, const GeneralizedSimplex& set,
                       double tol) {
  require_same_size(x.size(), set.size(), "active_sets");
  ActiveSets out;
  const auto lo = set.lower();
  const auto hi = set.upper();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= lo[i] + tol) out.lower.push_back(i);
    if (x[i] >= hi[i] - tol) out.upper.push_back(i);
  }
  return out;
}

double kkt_residual_from_gradient(const GeneralizedSimplex& set,
                                  std::span<const double> x,
                                  std::span<const double> gradient) {
  require_same_size(x.size(), gradient.size(), "kkt_residual");
  Vector step(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) step[i] = x[i] - gradient[i];
  const Vector p = proj_generalized_simplex(step, set);
  return distance2(x, p) / (1.0 + norm2(x));
}

double kkt_residual(const QpProblem& problem, std::span<const double> x) {
  const Vector g = problem.gradient(x);
  return kkt_residual_from_gradient(problem.feasible_set, x, g);
}

// ---------------------------------------------------------------------------
// Preprocessing

Vector Preprocessed::expand(std::span<const double> reduced_x) const {
  if (kind == Kind::kSingleton) return singleton_point;
  require_same_size(reduced_x.size(), free_indices.size(), "expand");
  Vector x(full_size, 0.0);
  for (std::size_t k = 0; k < free_indices.size(); ++k) {
    x[free_indices[k]] = reduced_x[k];
  }
  for (std::size_t k = 0; k < fixed_indices.size(); ++k) {
    x[fixed_indices[k]] = fixed_values[k];
  }
  return x;
}

Preprocessed preprocess(const GeneralizedSimplex& set) {
  const double b = set.budget();
  const double scale = std::max(1.0, std::abs(b));
  const double tol = kFixedGapTol * scale;
  if (set.lower_sum() > b + tol || set.upper_sum() < b - tol) {
    std::ostringstream os;
    os.precision(17);
    os << "preprocess: empty feasible set (e^T l = " << set.lower_sum()
       << ", b = " << b << ", e^T u = " << set.upper_sum() << ")";
    fail(ErrorCode::kInfeasible, os.str());
  }

  Preprocessed out;
  out.full_size = set.size();
  const auto lo = set.lower();
  const auto hi = set.upper();

  if (std::abs(set.lower_sum() - b) <= tol) {
    out.kind = Preprocessed::Kind::kSingleton;
    out.singleton_point.assign(lo.begin(), lo.end());
    return out;
  }
  if (std::abs(set.upper_sum() - b) <= tol) {
    out.kind = Preprocessed::Kind::kSingleton;
    out.singleton_point.assign(hi.begin(), hi.end());
    return out;
  }

  Vector rlo, rhi;
  Vector fixed_for_sum;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (hi[i] - lo[i] <= kFixedGapTol) {
      out.fixed_indices.push_back(i);
      out.fixed_values.push_back(lo[i]);
    } else {
      out.free_indices.push_back(i);
      rlo.push_back(lo[i]);
      rhi.push_back(hi[i]);
    }
  }
  const double rb = b - accurate_sum(out.fixed_values);
  if (out.free_indices.empty()) {
    out.kind = Preprocessed::Kind::kSingleton;
    out.singleton_point = out.expand({});
    return out;
  }
  out.reduced.emplace_back(rb, std::move(rlo), std::move(rhi));
  return out;
}

QpProblem reduce_problem(const QpProblem& problem, const Preprocessed& pre) {
  if (pre.kind != Preprocessed::Kind::kReduced) {
    fail(ErrorCode::kInvalidArgument, "reduce_problem: singleton set");
  }
  require_same_size(problem.size(), pre.full_size, "reduce_problem");
  const auto& fr = pre.free_indices;
  const std::size_t m = fr.size();
  Vector q(m * m);
  Vector c(m);
  for (std::size_t a = 0; a < m; ++a) {
    const auto col = problem.Q.column(fr[a]);
    for (std::size_t b = 0; b < m; ++b) q[a * m + b] = col[fr[b]];
    double s = problem.c[fr[a]];
    for (std::size_t k = 0; k < pre.fixed_indices.size(); ++k) {
      s += col[pre.fixed_indices[k]] * pre.fixed_values[k];
    }
    c[a] = s;
  }
  return QpProblem(DenseSymmetricMatrix(m, std::move(q)), std::move(c),
                   pre.reduced_set());
}

}  // namespace gsqp
