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

#pragma once

#include <span>

#include "gsqp/core.hpp"

namespace gsqp {

struct LpVertex {
  Vector vertex;
  double value = 0.0;
};

/// argmin g^T x over F by greedy fill: start at l and hand the budget
/// b - e^T l to coordinates in ascending (g_i, i) order, each up to u_i - l_i.
/// Throws kInfeasible unless e^T l < b < e^T u.
LpVertex lp_minimize(std::span<const double> gradient,
                     const GeneralizedSimplex& set);

/// argmax g^T x over F (lp_minimize on -g, value negated back).
LpVertex lp_maximize(std::span<const double> gradient,
                     const GeneralizedSimplex& set);

/// Frank-Wolfe gap max_{v in F} g^T (x - v) = g^T x - min_v g^T v.
double linear_gap(std::span<const double> gradient, std::span<const double> x,
                  const GeneralizedSimplex& set);

}  // namespace gsqp
