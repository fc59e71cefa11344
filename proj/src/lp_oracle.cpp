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

#include "gsqp/lp_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace gsqp {

LpVertex lp_minimize(std::span<const double> gradient,
                     const GeneralizedSimplex& set) {
  const std::size_t n = set.size();
  if (gradient.size() != n) {
    fail(ErrorCode::kDimensionMismatch, "lp_minimize: gradient size");
  }
  if (!(set.lower_sum() < set.budget() && set.budget() < set.upper_sum())) {
    fail(ErrorCode::kInfeasible, "lp_minimize: need e^T l < b < e^T u");
  }
  const auto lo = set.lower();
  const auto hi = set.upper();

  // Only the first few coordinates in gradient order are usually filled, so
  // a heap beats a full sort: O(n + m log n) for m filled coordinates.
  std::vector<std::size_t> heap(n);
  std::iota(heap.begin(), heap.end(), std::size_t{0});
  auto later = [&](std::size_t a, std::size_t b) {
    return gradient[a] > gradient[b] || (gradient[a] == gradient[b] && a > b);
  };
  std::make_heap(heap.begin(), heap.end(), later);

  LpVertex out;
  out.vertex.assign(lo.begin(), lo.end());
  double remaining = set.budget() - set.lower_sum();
  auto end = heap.end();
  while (remaining > 0.0 && end != heap.begin()) {
    std::pop_heap(heap.begin(), end, later);
    --end;
    const std::size_t i = *end;
    const double width = hi[i] - lo[i];
    if (width >= remaining) {
      out.vertex[i] = lo[i] + remaining;
      remaining = 0.0;
    } else {
      out.vertex[i] = hi[i];
      remaining -= width;
    }
  }
  out.value = accurate_dot(gradient, out.vertex);
  return out;
}

LpVertex lp_maximize(std::span<const double> gradient,
                     const GeneralizedSimplex& set) {
  Vector neg(gradient.begin(), gradient.end());
  for (double& v : neg) v = -v;
  LpVertex out = lp_minimize(neg, set);
  out.value = -out.value;
  return out;
}

double linear_gap(std::span<const double> gradient, std::span<const double> x,
                  const GeneralizedSimplex& set) {
  const LpVertex v = lp_minimize(gradient, set);
  Vector diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - v.vertex[i];
  return accurate_dot(gradient, diff);
}

}  // namespace gsqp
