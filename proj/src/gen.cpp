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

#include "gsqp/gen.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "gsqp/rng.hpp"

namespace gsqp {

ProjectionInstance gen_projection_instance(std::size_t n, std::uint64_t seed) {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "gen_projection_instance: n < 2");
  Rng rng(seed, streams::kProjection);
  Vector lo(n), hi(n), point(n);
  for (double& v : lo) v = std::max(0.0, rng.normal());
  for (std::size_t i = 0; i < n; ++i) hi[i] = lo[i] + rng.uniform();
  for (double& v : point) v = rng.uniform();
  Vector mid(n);
  for (std::size_t i = 0; i < n; ++i) mid[i] = lo[i] + hi[i];
  const double b = accurate_sum(mid) / 2.0;
  return {GeneralizedSimplex(b, std::move(lo), std::move(hi)), std::move(point)};
}

void QpInstanceSpec::validate() const {
  if (n < 2) fail(ErrorCode::kInvalidArgument, "QpInstanceSpec: n < 2");
  if (!(cond >= 1.0) || !std::isfinite(cond)) {
    fail(ErrorCode::kInvalidArgument, "QpInstanceSpec: cond < 1");
  }
  if (!(ratio > 0.0 && ratio < 1.0)) {
    fail(ErrorCode::kInvalidArgument, "QpInstanceSpec: ratio outside (0, 1)");
  }
}

double GeneratedQp::lipschitz() const {
  return *std::max_element(d.begin(), d.end()) / frobenius_scale;
}

namespace {

struct Attempt {
  bool ok;
  GeneratedQp qp;
};

Attempt generate_once(const QpInstanceSpec& spec, std::uint64_t seed) {
  const std::size_t n = spec.n;
  const auto ni = static_cast<Eigen::Index>(n);

  // Orthogonal basis from the QR of a Gaussian matrix (row-major draw order).
  Eigen::MatrixXd q0(ni, ni);
  {
    Rng rng(seed, streams::kQpBasis);
    for (Eigen::Index i = 0; i < ni; ++i) {
      for (Eigen::Index j = 0; j < ni; ++j) q0(i, j) = rng.normal();
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(q0);
  const Eigen::MatrixXd basis = qr.householderQ();

  Vector d(n);
  {
    Rng rng(seed, streams::kQpSpectrum);
    const auto top = static_cast<std::int64_t>(std::floor(spec.cond));
    for (double& v : d) v = static_cast<double>(rng.integer(1, top));
    auto lo_it = std::min_element(d.begin(), d.end());
    auto hi_it = std::max_element(d.begin(), d.end());
    if (lo_it == hi_it) hi_it = lo_it == d.begin() ? d.begin() + 1 : d.begin();
    *lo_it = 1.0;
    *hi_it = spec.cond;
  }

  const Eigen::Map<const Eigen::VectorXd> dv(d.data(), ni);
  Eigen::MatrixXd qt = basis * dv.asDiagonal() * basis.transpose();
  qt = (0.5 * (qt + qt.transpose())).eval();
  const double fro = qt.norm();
  qt /= fro;

  Vector q_entries(n * n);
  for (Eigen::Index i = 0; i < ni; ++i) {
    for (Eigen::Index j = 0; j < ni; ++j) {
      q_entries[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] =
          qt(i, j);
    }
  }
  DenseSymmetricMatrix Q(n, std::move(q_entries));

  Vector xbar(n);
  {
    Rng rng(seed, streams::kQpOptimum);
    for (double& v : xbar) v = 2.0 * rng.uniform() - 1.0;
  }
  const double b = accurate_sum(xbar);
  Vector lo(n, -1.0), hi(n, 1.0);
  std::size_t interior = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (xbar[i] <= -spec.ratio) {
      lo[i] = xbar[i];
    } else if (xbar[i] >= spec.ratio) {
      hi[i] = xbar[i];
    } else {
      ++interior;
    }
  }

  Vector zbar(n, 0.0);
  double ybar;
  {
    Rng rng(seed, streams::kQpMultipliers);
    ybar = rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      if (xbar[i] <= -spec.ratio) {
        zbar[i] = rng.uniform();
      } else if (xbar[i] >= spec.ratio) {
        zbar[i] = -rng.uniform();
      }
    }
  }

  Vector c = Q.multiply(xbar);
  for (std::size_t i = 0; i < n; ++i) c[i] = -c[i] + ybar + zbar[i];

  GeneralizedSimplex set(b, std::move(lo), std::move(hi));
  const bool ok = interior > 0 && set.satisfies_assumption();
  return {ok,
          GeneratedQp{QpProblem(std::move(Q), std::move(c), std::move(set)),
                      std::move(xbar), ybar, std::move(zbar), std::move(d), fro,
                      seed}};
}

}  // namespace

GeneratedQp gen_qp_instance(const QpInstanceSpec& spec) {
  spec.validate();
  constexpr int kMaxRetries = 10;
  std::uint64_t seed = spec.seed;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    Attempt a = generate_once(spec, seed);
    if (a.ok) return std::move(a.qp);
    seed = splitmix64(spec.seed + static_cast<std::uint64_t>(attempt) + 1);
  }
  std::ostringstream os;
  os << "gen_qp_instance: no interior coordinate after " << kMaxRetries
     << " retries (n=" << spec.n << ", ratio=" << spec.ratio << ")";
  fail(ErrorCode::kDegenerateInstance, os.str());
}

}  // namespace gsqp
