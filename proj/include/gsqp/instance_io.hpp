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

// Instance files: one JSON header line, then little-endian float64 sections.
// The byte layout is described in docs/instance_format.md.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "gsqp/core.hpp"
#include "gsqp/gen.hpp"

namespace gsqp {

enum class InstanceKind {
  kQp,
  /// Projection of `point` onto F: Q = I and c = -point, Q not stored.
  kProjection,
};

struct InstanceMetadata {
  std::string generator;  // "qp", "projection" or "" for hand-made data
  std::uint64_t seed = 0;
  std::uint64_t effective_seed = 0;
  double cond = 0.0;
  double ratio = 0.0;
  /// Largest eigenvalue of Q when known, else 0.
  double lipschitz = 0.0;
};

struct Instance {
  InstanceKind kind = InstanceKind::kQp;
  GeneralizedSimplex set;
  Vector c;
  std::optional<DenseSymmetricMatrix> Q;  // absent for projections
  std::optional<Vector> xbar;              // planted optimum when known
  InstanceMetadata meta;

  std::size_t size() const noexcept { return c.size(); }
  /// The point to project (kProjection only).
  Vector projection_point() const;
  /// QpProblem view; throws kInvalidArgument for projection instances.
  QpProblem qp_problem() const;
};

Instance make_instance(const GeneratedQp& qp, const QpInstanceSpec& spec);
Instance make_instance(const ProjectionInstance& inst, std::uint64_t seed);
Instance make_instance(const QpProblem& problem);

void write_instance(std::ostream& out, const Instance& inst);
void write_instance(const std::string& path, const Instance& inst);
/// Throws kIo on malformed or truncated input.
Instance read_instance(std::istream& in);
Instance read_instance(const std::string& path);

}  // namespace gsqp
