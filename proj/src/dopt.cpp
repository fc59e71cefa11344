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

#include "gsqp/dopt.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>

#include "gsqp/rng.hpp"

namespace gsqp {
namespace {

using ConstMatrixMap = Eigen::Map<const Eigen::MatrixXd>;

ConstMatrixMap as_matrix(const DesignProblem& problem) {
  return {problem.data().data(), static_cast<Eigen::Index>(problem.rows()),
          static_cast<Eigen::Index>(problem.cols())};
}

// Cholesky factor of M(x) = sum_{x_i > skip} x_i a_i a_i^T.
Eigen::LLT<Eigen::MatrixXd> factor_moment(const DesignProblem& problem,
                                          std::span<const double> x) {
  if (x.size() != problem.cols()) {
    fail(ErrorCode::kDimensionMismatch, "dopt: x has the wrong length");
  }
  const auto A = as_matrix(problem);
  const auto p = static_cast<Eigen::Index>(problem.rows());

  std::vector<Eigen::Index> support;
  support.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0)) fail(ErrorCode::kDomainError, "dopt: x_i < 0");
    if (x[i] > kDesignSkipTol) support.push_back(static_cast<Eigen::Index>(i));
  }
  // Scaled columns sqrt(x_i) a_i so that M = S S^T.
  Eigen::MatrixXd S(p, static_cast<Eigen::Index>(support.size()));
  for (Eigen::Index j = 0; j < S.cols(); ++j) {
    const Eigen::Index i = support[static_cast<std::size_t>(j)];
    S.col(j) = std::sqrt(x[static_cast<std::size_t>(i)]) * A.col(i);
  }
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(p, p);
  M.selfadjointView<Eigen::Lower>().rankUpdate(S);
  Eigen::LLT<Eigen::MatrixXd> llt(M.selfadjointView<Eigen::Lower>());
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::kDomainError, "dopt: A Diag(x) A^T is not positive definite");
  }
  const auto& L = llt.matrixLLT();
  for (Eigen::Index k = 0; k < p; ++k) {
    if (!(L(k, k) > 0.0) || !std::isfinite(L(k, k))) {
      fail(ErrorCode::kDomainError, "dopt: nonpositive pivot");
    }
  }
  return llt;
}

// W = L^{-1} A, so B = W^T W.
Eigen::MatrixXd whitened(const DesignProblem& problem,
                         const Eigen::LLT<Eigen::MatrixXd>& llt) {
  Eigen::MatrixXd W = as_matrix(problem);
  llt.matrixL().solveInPlace(W);
  return W;
}

}  // namespace

DesignProblem::DesignProblem(std::size_t p, std::size_t n, Vector columns)
    : p_(p), n_(n), a_(std::move(columns)) {
  if (p == 0 || n == 0) fail(ErrorCode::kInvalidArgument, "DesignProblem: empty");
  if (p >= n) fail(ErrorCode::kInvalidArgument, "DesignProblem: requires p < n");
  if (a_.size() != p * n) {
    fail(ErrorCode::kDimensionMismatch, "DesignProblem: data is not p*n");
  }
  const Vector uniform(n, 1.0 / static_cast<double>(n));
  try {
    factor_moment(*this, uniform);
  } catch (const Error&) {
    fail(ErrorCode::kInvalidArgument, "DesignProblem: A is not full row rank");
  }
}

double dopt_value(const DesignProblem& problem, std::span<const double> x) {
  const auto llt = factor_moment(problem, x);
  const auto& L = llt.matrixLLT();
  double logdet = 0.0;
  for (Eigen::Index k = 0; k < L.rows(); ++k) logdet += std::log(L(k, k));
  return -2.0 * logdet;
}

Vector dopt_gradient(const DesignProblem& problem, std::span<const double> x) {
  const auto llt = factor_moment(problem, x);
  const Eigen::MatrixXd W = whitened(problem, llt);
  Vector g(problem.cols());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = -W.col(static_cast<Eigen::Index>(i)).squaredNorm();
  }
  return g;
}

void dopt_derivatives(const DesignProblem& problem, std::span<const double> x,
                      Vector& gradient, DenseSymmetricMatrix& hessian) {
  const auto llt = factor_moment(problem, x);
  const Eigen::MatrixXd W = whitened(problem, llt);
  const std::size_t n = problem.cols();
  const auto ni = static_cast<Eigen::Index>(n);

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(ni, ni);
  B.selfadjointView<Eigen::Lower>().rankUpdate(W.transpose());

  gradient.assign(n, 0.0);
  Vector h(n * n);
  for (Eigen::Index j = 0; j < ni; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    gradient[uj] = -B(j, j);
    for (Eigen::Index i = j; i < ni; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const double v = B(i, j) * B(i, j);
      h[ui * n + uj] = v;
      h[uj * n + ui] = v;
    }
  }
  hessian = DenseSymmetricMatrix(n, std::move(h));
}

DenseSymmetricMatrix dopt_hessian(const DesignProblem& problem,
                                  std::span<const double> x) {
  Vector g;
  DenseSymmetricMatrix H;
  dopt_derivatives(problem, x, g, H);
  return H;
}

DesignProblem generate_design_data(std::size_t n, std::size_t p,
                                   std::uint64_t seed) {
  if (p >= n) fail(ErrorCode::kInvalidArgument, "generate_design_data: p >= n");
  Rng rng(seed, streams::kDesign);
  Vector a(n * p);
  for (double& v : a) v = rng.normal();
  return DesignProblem(p, n, std::move(a));
}

bool DesignObjective::in_domain(std::span<const double> x) const {
  try {
    factor_moment(problem_, x);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kDomainError) return false;
    throw;
  }
}

}  // namespace gsqp
