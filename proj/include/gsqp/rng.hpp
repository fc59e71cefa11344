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

// Seeded random streams for instance generation.
//
// Engine: std::mt19937_64 (fully specified by the standard). Stream s of
// seed S is seeded with splitmix64(S ^ splitmix64(s + 1)). Variates are
// produced here rather than through <random> distributions, whose output is
// implementation-defined:
//   uniform()  = (draw >> 11) * 2^-53, in [0, 1)
//   normal()   = Box-Muller on two uniforms, cosine branch only
//   integer(a, b) = a + floor(uniform() * (b - a + 1)), clamped to b

#pragma once

#include <cstdint>
#include <random>

namespace gsqp {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  double uniform();
  double normal();
  std::int64_t integer(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

/// Stream identifiers; one per generator draw phase.
namespace streams {
inline constexpr std::uint64_t kProjection = 1;
inline constexpr std::uint64_t kQpBasis = 2;
inline constexpr std::uint64_t kQpSpectrum = 3;
inline constexpr std::uint64_t kQpOptimum = 4;
inline constexpr std::uint64_t kQpMultipliers = 5;
inline constexpr std::uint64_t kDesign = 6;
inline constexpr std::uint64_t kPowerIteration = 7;
}  // namespace streams

}  // namespace gsqp
