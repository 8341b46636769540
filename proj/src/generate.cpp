// Copyright 2026 The ATP Authors.
//
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


#include "atp/generate.hpp"

#include <cmath>
#include <string>

#include "atp/error.hpp"
#include "atp/rng.hpp"

namespace atp {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ValidationError(std::string(name) + " must lie in [0,1]");
}

}  // namespace

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "path") return GraphKind::kPath;
  if (name == "cycle") return GraphKind::kCycle;
  if (name == "star") return GraphKind::kStar;
  if (name == "complete") return GraphKind::kComplete;
  if (name == "erdos_renyi" || name == "er") return GraphKind::kErdosRenyi;
  if (name == "sbm") return GraphKind::kSbm;
  throw ValidationError("unknown graph kind '" + std::string(name) + "'");
}

SparseGraph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i + 1 < n; ++i)
    edges.push_back({NodeId(i), NodeId(i + 1)});
  return SparseGraph::from_edges(n, edges);
}

SparseGraph cycle_graph(std::size_t n) {
  if (n < 3) throw ValidationError("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.push_back({NodeId(i), NodeId((i + 1) % n)});
  return SparseGraph::from_edges(n, edges);
}

SparseGraph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= leaves; ++i) edges.push_back({0, NodeId(i)});
  return SparseGraph::from_edges(leaves + 1, edges);
}

SparseGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      edges.push_back({NodeId(u), NodeId(v)});
  return SparseGraph::from_edges(n, edges);
}

SparseGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  check_probability(p, "p");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.push_back({NodeId(u), NodeId(v)});
  return SparseGraph::from_edges(n, edges);
}

PlantedPartition stochastic_block_model(std::span<const std::size_t> sizes,
                                        double p_in, double p_out,
                                        std::uint64_t seed) {
  check_probability(p_in, "p_in");
  check_probability(p_out, "p_out");
  if (!(p_in > p_out)) throw ValidationError("sbm requires p_in > p_out");
  if (sizes.empty()) throw ValidationError("sbm needs at least one block");

  PlantedPartition out;
  for (std::size_t b = 0; b < sizes.size(); ++b)
    out.block.insert(out.block.end(), sizes[b], static_cast<int>(b));
  const std::size_t n = out.block.size();

  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng.bernoulli(out.block[u] == out.block[v] ? p_in : p_out))
        edges.push_back({NodeId(u), NodeId(v)});
  out.graph = SparseGraph::from_edges(n, edges);
  return out;
}

FeatureMatrix gaussian_features(std::size_t n, std::size_t f,
                                std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix x(n, f);
  for (double& v : x.data()) v = rng.normal();
  return x;
}

FeatureMatrix class_indicator_features(std::span<const int> labels,
                                       std::size_t classes, double noise,
                                       std::uint64_t seed) {
  if (!(noise >= 0.0 && noise <= 1.0))
    throw ValidationError("noise must lie in [0, 1]");
  if (classes == 0) throw ValidationError("need at least one class");
  const std::size_t n = labels.size();
  FeatureMatrix x(n, classes);
  for (std::size_t i = 0; i < n; ++i) {
    if (labels[i] < 0 || std::size_t(labels[i]) >= classes)
      throw ValidationError("label out of range at node " + std::to_string(i));
    x(i, labels[i]) = 1.0;
  }
  Rng rng(seed);
  const auto count = static_cast<std::uint64_t>(std::floor(noise * n + 1e-9));
  for (std::uint64_t i : rng.sample_without_replacement(n, count)) {
    for (double& v : x.row(i)) v = 0.0;
    x(i, rng.below(classes)) = 1.0;
  }
  return x;
}

SparseGraph generate(GraphKind kind, const GenerateParams& params,
                     std::uint64_t seed) {
  switch (kind) {
    case GraphKind::kPath:
      return path_graph(params.n);
    case GraphKind::kCycle:
      return cycle_graph(params.n);
    case GraphKind::kStar:
      return star_graph(params.n);
    case GraphKind::kComplete:
      return complete_graph(params.n);
    case GraphKind::kErdosRenyi:
      return erdos_renyi(params.n, params.p, seed);
    case GraphKind::kSbm:
      return stochastic_block_model(params.block_sizes, params.p_in,
                                    params.p_out, seed)
          .graph;
  }
  throw ValidationError("unknown graph kind");
}

}  // namespace atp
