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

#include "gsqp/instance_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "json.hpp"

namespace gsqp {
namespace {

constexpr const char* kFormatName = "gsqp-instance";
constexpr int kFormatVersion = 1;

const char* kind_name(InstanceKind k) {
  return k == InstanceKind::kQp ? "qp" : "proj";
}

std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xffu);
    return r;
  }
}

void write_section(std::ostream& out, std::span<const double> v) {
  constexpr std::size_t kChunk = 4096;
  std::uint64_t buf[kChunk];
  for (std::size_t off = 0; off < v.size(); off += kChunk) {
    const std::size_t len = std::min(kChunk, v.size() - off);
    for (std::size_t i = 0; i < len; ++i) {
      buf[i] = to_little(std::bit_cast<std::uint64_t>(v[off + i]));
    }
    out.write(reinterpret_cast<const char*>(buf),
              static_cast<std::streamsize>(len * sizeof(std::uint64_t)));
  }
  if (!out) fail(ErrorCode::kIo, "instance: write failed");
}

Vector read_section(std::istream& in, std::size_t count, const char* name) {
  Vector v(count);
  in.read(reinterpret_cast<char*>(v.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(in.gcount()) != count * sizeof(double)) {
    fail(ErrorCode::kIo, std::string("instance: truncated section ") + name);
  }
  if constexpr (std::endian::native != std::endian::little) {
    for (double& e : v) {
      e = std::bit_cast<double>(to_little(std::bit_cast<std::uint64_t>(e)));
    }
  }
  return v;
}

}  // namespace

Vector Instance::projection_point() const {
  if (kind != InstanceKind::kProjection) {
    fail(ErrorCode::kInvalidArgument, "instance: not a projection instance");
  }
  Vector p(c.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = -c[i];
  return p;
}

QpProblem Instance::qp_problem() const {
  if (kind != InstanceKind::kQp || !Q) {
    fail(ErrorCode::kInvalidArgument, "instance: not a QP instance");
  }
  return QpProblem(*Q, c, set);
}

Instance make_instance(const GeneratedQp& qp, const QpInstanceSpec& spec) {
  Instance inst{InstanceKind::kQp, qp.problem.feasible_set, qp.problem.c,
                qp.problem.Q, qp.xbar, {}};
  inst.meta.generator = "qp";
  inst.meta.seed = spec.seed;
  inst.meta.effective_seed = qp.effective_seed;
  inst.meta.cond = spec.cond;
  inst.meta.ratio = spec.ratio;
  inst.meta.lipschitz = qp.lipschitz();
  return inst;
}

Instance make_instance(const ProjectionInstance& proj, std::uint64_t seed) {
  Vector c(proj.point.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = -proj.point[i];
  Instance inst{InstanceKind::kProjection, proj.set, std::move(c),
                std::nullopt, std::nullopt, {}};
  inst.meta.generator = "projection";
  inst.meta.seed = seed;
  inst.meta.effective_seed = seed;
  inst.meta.lipschitz = 1.0;
  return inst;
}

Instance make_instance(const QpProblem& problem) {
  return Instance{InstanceKind::kQp, problem.feasible_set, problem.c,
                  problem.Q, std::nullopt, {}};
}

void write_instance(std::ostream& out, const Instance& inst) {
  const std::size_t n = inst.size();
  if (inst.set.size() != n || (inst.Q && inst.Q->size() != n) ||
      (inst.xbar && inst.xbar->size() != n)) {
    fail(ErrorCode::kDimensionMismatch, "instance: section sizes disagree");
  }
  nlohmann::ordered_json h;
  h["format"] = kFormatName;
  h["version"] = kFormatVersion;
  h["kind"] = kind_name(inst.kind);
  h["n"] = n;
  h["b"] = inst.set.budget();
  h["has_q"] = inst.Q.has_value();
  h["has_xbar"] = inst.xbar.has_value();
  h["lipschitz"] = inst.meta.lipschitz;
  h["generator"] = {{"name", inst.meta.generator},
                    {"seed", inst.meta.seed},
                    {"effective_seed", inst.meta.effective_seed},
                    {"cond", inst.meta.cond},
                    {"ratio", inst.meta.ratio}};
  out << h.dump() << '\n';
  write_section(out, inst.set.lower());
  write_section(out, inst.set.upper());
  write_section(out, inst.c);
  if (inst.Q) write_section(out, inst.Q->entries());
  if (inst.xbar) write_section(out, *inst.xbar);
  out.flush();
  if (!out) fail(ErrorCode::kIo, "instance: write failed");
}

void write_instance(const std::string& path, const Instance& inst) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "instance: cannot open " + path + " for writing");
  write_instance(out, inst);
}

Instance read_instance(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::kIo, "instance: missing header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIo, std::string("instance: bad header: ") + e.what());
  }
  try {
    if (h.at("format").get<std::string>() != kFormatName) {
      fail(ErrorCode::kIo, "instance: not a gsqp instance file");
    }
    if (h.at("version").get<int>() != kFormatVersion) {
      fail(ErrorCode::kIo, "instance: unsupported format version");
    }
    const std::string kind = h.at("kind").get<std::string>();
    if (kind != "qp" && kind != "proj") fail(ErrorCode::kIo, "instance: bad kind");
    const auto n = h.at("n").get<std::size_t>();
    if (n == 0) fail(ErrorCode::kIo, "instance: n = 0");
    const double b = h.at("b").get<double>();
    const bool has_q = h.at("has_q").get<bool>();
    const bool has_xbar = h.at("has_xbar").get<bool>();

    Vector lower = read_section(in, n, "lower");
    Vector upper = read_section(in, n, "upper");
    Vector c = read_section(in, n, "c");
    std::optional<DenseSymmetricMatrix> Q;
    if (has_q) Q.emplace(n, read_section(in, n * n, "Q"));
    std::optional<Vector> xbar;
    if (has_xbar) xbar = read_section(in, n, "xbar");

    Instance inst{kind == "qp" ? InstanceKind::kQp : InstanceKind::kProjection,
                  GeneralizedSimplex(b, std::move(lower), std::move(upper)),
                  std::move(c), std::move(Q), std::move(xbar), {}};
    if (inst.kind == InstanceKind::kQp && !inst.Q) {
      fail(ErrorCode::kIo, "instance: qp instance without Q");
    }
    inst.meta.lipschitz = h.value("lipschitz", 0.0);
    if (h.contains("generator")) {
      const auto& g = h.at("generator");
      inst.meta.generator = g.value("name", std::string());
      inst.meta.seed = g.value("seed", std::uint64_t{0});
      inst.meta.effective_seed = g.value("effective_seed", std::uint64_t{0});
      inst.meta.cond = g.value("cond", 0.0);
      inst.meta.ratio = g.value("ratio", 0.0);
    }
    return inst;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIo, std::string("instance: bad header field: ") + e.what());
  }
}

Instance read_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "instance: cannot open " + path);
  return read_instance(in);
}

}  // namespace gsqp
