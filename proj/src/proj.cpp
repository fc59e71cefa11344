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

#include "gsqp/proj.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gsqp {
namespace {

inline double clamp(double w, double lo, double hi) {
  return std::min(std::max(w, lo), hi);
}

void require_size(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    std::ostringstream os;
    os << what << ": size " << got << " vs " << want;
    fail(ErrorCode::kDimensionMismatch, os.str());
  }
}

// phi'(y) and the closed-interval membership count in one sweep.
struct DualSlope {
  double phi_prime;
  std::size_t interior;
};

DualSlope dual_slope(double y, std::span<const double> xbar,
                     const GeneralizedSimplex& set) {
  const auto lo = set.lower();
  const auto hi = set.upper();
  // Neumaier accumulation seeded with -b.
  double sum = -set.budget();
  double comp = 0.0;
  std::size_t interior = 0;
  for (std::size_t i = 0; i < xbar.size(); ++i) {
    const double w = y + xbar[i];
    double p;
    if (w < lo[i]) {
      p = lo[i];
    } else if (w > hi[i]) {
      p = hi[i];
    } else {
      p = w;
      ++interior;
    }
    const double t = sum + p;
    if (std::abs(sum) >= std::abs(p)) {
      comp += (sum - t) + p;
    } else {
      comp += (p - t) + sum;
    }
    sum = t;
  }
  return {sum + comp, interior};
}

// Integral over [0, r] of clamp(s - s1, 0, s2 - s1).
inline double ramp_integral(double r, double s1, double s2) {
  if (r <= s1) return 0.0;
  if (r <= s2) {
    const double d = r - s1;
    return 0.5 * d * d;
  }
  const double len = s2 - s1;
  return 0.5 * len * len + len * (r - s2);
}

void check_budget(const GeneralizedSimplex& set) {
  if (!(set.lower_sum() < set.budget() && set.budget() < set.upper_sum())) {
    std::ostringstream os;
    os.precision(17);
    os << "projection needs e^T l < b < e^T u, got " << set.lower_sum() << " / "
       << set.budget() << " / " << set.upper_sum();
    fail(ErrorCode::kInfeasible, os.str());
  }
}

}  // namespace

void SsnConfig::validate() const {
  auto in_open = [](double v, double a, double b) { return v > a && v < b; };
  if (!(grad_tol > 0.0) || max_iter < 0 || !in_open(delta, 0.0, 1.0) ||
      !in_open(mu, 0.0, 0.5) || !in_open(tau1, 0.0, 1.0) ||
      !in_open(tau2, 0.0, 1.0) || !std::isfinite(y0) || max_backtracks < 0) {
    fail(ErrorCode::kInvalidArgument, "SsnConfig: parameter out of range");
  }
}

void proj_box_into(std::span<const double> point, std::span<const double> lower,
                   std::span<const double> upper, std::span<double> out) {
  require_size(lower.size(), point.size(), "proj_box lower");
  require_size(upper.size(), point.size(), "proj_box upper");
  require_size(out.size(), point.size(), "proj_box out");
  for (std::size_t i = 0; i < point.size(); ++i) {
    out[i] = clamp(point[i], lower[i], upper[i]);
  }
}

Vector proj_box(std::span<const double> point, std::span<const double> lower,
                std::span<const double> upper) {
  Vector out(point.size());
  proj_box_into(point, lower, upper, out);
  return out;
}

double phi_value(double y, std::span<const double> xbar,
                 const GeneralizedSimplex& set) {
  require_size(xbar.size(), set.size(), "phi_value");
  const auto lo = set.lower();
  const auto hi = set.upper();
  Vector terms(xbar.size() + 1);
  for (std::size_t i = 0; i < xbar.size(); ++i) {
    const double w = y + xbar[i];
    const double p = clamp(w, lo[i], hi[i]);
    const double z = w - p;
    const double support = lo[i] * std::min(z, 0.0) + hi[i] * std::max(z, 0.0);
    terms[i] = 0.5 * p * p + support;
  }
  terms.back() = -set.budget() * y;
  return accurate_sum(terms);
}

double phi_prime(double y, std::span<const double> xbar,
                 const GeneralizedSimplex& set) {
  require_size(xbar.size(), set.size(), "phi_prime");
  return dual_slope(y, xbar, set).phi_prime;
}

std::size_t generalized_hessian_scalar(double y, std::span<const double> xbar,
                                       const GeneralizedSimplex& set) {
  require_size(xbar.size(), set.size(), "generalized_hessian_scalar");
  return dual_slope(y, xbar, set).interior;
}

double phi_curvature_remainder(double y, double step,
                               std::span<const double> xbar,
                               const GeneralizedSimplex& set) {
  require_size(xbar.size(), set.size(), "phi_curvature_remainder");
  const auto lo = set.lower();
  const auto hi = set.upper();
  const double r = std::abs(step);
  double total = 0.0;
  if (step >= 0.0) {
    for (std::size_t i = 0; i < xbar.size(); ++i) {
      const double w = y + xbar[i];
      total += ramp_integral(r, std::max(0.0, lo[i] - w), std::max(0.0, hi[i] - w));
    }
  } else {
    for (std::size_t i = 0; i < xbar.size(); ++i) {
      const double w = y + xbar[i];
      total += ramp_integral(r, std::max(0.0, w - hi[i]), std::max(0.0, w - lo[i]));
    }
  }
  return total;
}

double bisection_root(std::span<const double> xbar,
                      const GeneralizedSimplex& set, double tol_abs) {
  require_size(xbar.size(), set.size(), "bisection_root");
  check_budget(set);
  auto slope = [&](double y) { return dual_slope(y, xbar, set).phi_prime; };

  const double f0 = slope(0.0);
  if (std::abs(f0) <= tol_abs) return 0.0;

  double lo, hi, flo, fhi;
  double step = 1.0;
  constexpr int kMaxDoublings = 2100;
  int doublings = 0;
  if (f0 < 0.0) {
    lo = 0.0;
    flo = f0;
    for (;;) {
      hi = step;
      fhi = slope(hi);
      if (fhi >= 0.0) break;
      lo = hi;
      flo = fhi;
      step *= 2.0;
      if (++doublings > kMaxDoublings || !std::isfinite(step)) {
        fail(ErrorCode::kInfeasible, "bisection_root: no sign change");
      }
    }
  } else {
    hi = 0.0;
    fhi = f0;
    for (;;) {
      lo = -step;
      flo = slope(lo);
      if (flo <= 0.0) break;
      hi = lo;
      fhi = flo;
      step *= 2.0;
      if (++doublings > kMaxDoublings || !std::isfinite(step)) {
        fail(ErrorCode::kInfeasible, "bisection_root: no sign change");
      }
    }
  }
  if (std::abs(flo) <= tol_abs) return lo;
  if (std::abs(fhi) <= tol_abs) return hi;

  for (;;) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      return std::abs(flo) <= std::abs(fhi) ? lo : hi;
    }
    const double fm = slope(mid);
    if (std::abs(fm) <= tol_abs) return mid;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
}

SsnResult ssn_solve(std::span<const double> xbar, const GeneralizedSimplex& set,
                    const SsnConfig& cfg) {
  cfg.validate();
  require_size(xbar.size(), set.size(), "ssn_solve");
  check_budget(set);

  const double tol_abs = cfg.grad_tol * std::max(1.0, std::abs(set.budget()));
  const std::size_t n = xbar.size();

  SsnResult result;
  double y = cfg.y0;
  if (cfg.warm_start) {
    const auto lo = set.lower();
    const auto hi = set.upper();
    Vector p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = clamp(xbar[i], lo[i], hi[i]);
    y = (set.budget() - accurate_sum(p)) / static_cast<double>(n);
  }

  bool converged = false;
  for (int k = 0;; ++k) {
    const DualSlope ds = dual_slope(y, xbar, set);
    result.trace.y_history.push_back(y);
    result.trace.final_phi_prime = ds.phi_prime;
    result.trace.iterations = k;
    if (std::abs(ds.phi_prime) <= tol_abs) {
      converged = true;
      break;
    }
    if (k >= cfg.max_iter) break;

    const double g = ds.phi_prime;
    const double eps = cfg.tau1 * std::min(cfg.tau2, std::abs(g));
    const double dy = -g / (static_cast<double>(ds.interior) + eps);

    // Armijo: phi(y + t) - phi(y) = t g + R(t) <= mu t g. With t g < 0 this
    // is R(t) <= (1 - mu) |t g|; R is evaluated without cancellation.
    double alpha = 1.0;
    bool accepted = false;
    for (int m = 0; m <= cfg.max_backtracks; ++m) {
      const double t = alpha * dy;
      const double remainder = phi_curvature_remainder(y, t, xbar, set);
      if (remainder <= (1.0 - cfg.mu) * std::abs(t * g)) {
        y += t;
        accepted = true;
        break;
      }
      alpha *= cfg.delta;
    }
    if (!accepted) break;
  }

  if (!converged) {
    result.trace.used_safeguard = true;
    y = bisection_root(xbar, set, tol_abs);
    result.trace.y_history.push_back(y);
    result.trace.final_phi_prime = dual_slope(y, xbar, set).phi_prime;
  }
  result.y = y;
  return result;
}

Vector proj_generalized_simplex(std::span<const double> xbar,
                                const GeneralizedSimplex& set,
                                const SsnConfig& cfg, SsnResult* result) {
  SsnResult r = ssn_solve(xbar, set, cfg);
  const auto lo = set.lower();
  const auto hi = set.upper();
  Vector x(xbar.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = clamp(r.y + xbar[i], lo[i], hi[i]);
  }
  if (result != nullptr) *result = std::move(r);
  return x;
}

Vector proj_generalized_simplex(std::span<const double> xbar,
                                const GeneralizedSimplex& set,
                                const SsnConfig& cfg) {
  return proj_generalized_simplex(xbar, set, cfg, nullptr);
}

}  // namespace gsqp
