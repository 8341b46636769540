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


#ifndef ATP_CORRECTION_HPP_
#define ATP_CORRECTION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

// Degree-targeted edge masking. Selected nodes have a fraction of their
// incident edges multiplied by the mask token (0 removes the edge).
struct MaskParams {
  double theta = 0.10;               // top fraction of nodes by degree
  double sparse_sample_ratio = 0.2;  // of the remaining nodes, in [0, 0.5]
  double edge_mask_fraction = 0.5;
  double mask_token = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct MaskPlan {
  MaskParams params;
  std::vector<NodeId> selected_nodes;                 // ascending
  std::vector<std::pair<NodeId, NodeId>> masked_edges;  // u < v, ascending
};

struct CorrectionReport {
  std::size_t edges_before = 0;
  std::size_t edges_masked = 0;
  std::size_t edges_removed = 0;  // token 0 only
  std::vector<std::pair<NodeId, double>> degree_reduction;  // per selected node

  std::string to_json() const;
};

// Top ceil(theta n) nodes by weighted degree (ties to the smaller id), plus a
// seeded uniform sample of floor(ratio * rest) of the others. Ascending ids.
std::vector<NodeId> select_nodes(const SparseGraph& g, double theta,
                                 double sparse_sample_ratio,
                                 std::uint64_t seed);

// Nodes whose convergence bound sqrt(vol / d_i) lambda2^k exceeds epsilon on
// the self-looped graph. lambda2 is computed densely unless supplied; graphs
// above the dense limit need the override.
std::vector<NodeId> select_nodes_epsilon(
    const SparseGraph& g, double epsilon, int k,
    std::optional<double> lambda2 = std::nullopt);

// Chooses floor(fraction * deg(u)) incident edges of each selected node u.
// An edge between two selected nodes belongs to the lower id's quota only.
// Each node draws from its own seeded stream, so a larger fraction masks a
// superset of the edges a smaller one masks.
MaskPlan plan_mask(const SparseGraph& g, std::vector<NodeId> selected,
                   const MaskParams& params);

// select_nodes followed by plan_mask.
MaskPlan resolve_plan(const SparseGraph& g, const MaskParams& params);

struct CorrectionResult {
  SparseGraph graph;
  CorrectionReport report;
};

CorrectionResult apply_mask(const SparseGraph& g, const MaskPlan& plan);

}  // namespace atp

#endif  // ATP_CORRECTION_HPP_
