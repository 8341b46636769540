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


#ifndef ATP_GENERATE_HPP_
#define ATP_GENERATE_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

enum class GraphKind { kPath, kCycle, kStar, kComplete, kErdosRenyi, kSbm };

GraphKind parse_graph_kind(std::string_view name);

struct GenerateParams {
  // Node count for path/cycle/complete/erdos_renyi; leaf count for star.
  std::size_t n = 0;
  double p = 0.0;
  std::vector<std::size_t> block_sizes;
  double p_in = 0.0;
  double p_out = 0.0;
};

SparseGraph path_graph(std::size_t n);
SparseGraph cycle_graph(std::size_t n);
// Node 0 is the center, 1..leaves the leaves.
SparseGraph star_graph(std::size_t leaves);
SparseGraph complete_graph(std::size_t n);
SparseGraph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

struct PlantedPartition {
  SparseGraph graph;
  std::vector<int> block;  // contiguous blocks in the given order
};

// Every pair is sampled independently: p_in inside a block, p_out across.
PlantedPartition stochastic_block_model(std::span<const std::size_t> sizes,
                                        double p_in, double p_out,
                                        std::uint64_t seed);

// i.i.d. standard normal entries.
FeatureMatrix gaussian_features(std::size_t n, std::size_t f,
                                std::uint64_t seed);

// One-hot class indicators where floor(noise * n) nodes, drawn without
// replacement, get the indicator of a uniformly random class instead.
FeatureMatrix class_indicator_features(std::span<const int> labels,
                                       std::size_t classes, double noise,
                                       std::uint64_t seed);

SparseGraph generate(GraphKind kind, const GenerateParams& params,
                     std::uint64_t seed);

}  // namespace atp

#endif  // ATP_GENERATE_HPP_
