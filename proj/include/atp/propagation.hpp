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


#ifndef ATP_PROPAGATION_HPP_
#define ATP_PROPAGATION_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

enum class SchemeKind { kSgc, kS2gc, kGbp, kHeat, kConcat, kCustom };

// Hop-combination weights w_0..w_k.
//   sgc     w_i = [i == k]
//   s2gc    w_i = 1 / (k + 1)
//   gbp     w_i = beta (1 - beta)^i
//   heat    w_i = omega^i / ((i!)^rho * C), C = sum_{l<=k} omega^l / (l!)^rho
//   concat  w_i = 1 (hops are returned separately)
//   custom  supplied verbatim, length k + 1
struct WeightScheme {
  SchemeKind kind = SchemeKind::kSgc;
  double beta = 0.5;
  double omega = 1.0;
  double rho = 1.0;
  std::vector<double> custom;
};

SchemeKind parse_scheme_kind(std::string_view name);
std::string scheme_name(SchemeKind kind);

enum class OutputMode { kSum, kConcat };

struct PropagationConfig {
  int k = 2;
  WeightScheme scheme;
  OutputMode mode = OutputMode::kSum;
  // Per-node last hop l_u in [0, k]; sum mode only.
  std::optional<std::vector<int>> node_depths;
};

std::vector<double> scheme_weights(const WeightScheme& scheme, int k);

// M = D^(r-1) A D^(-r) over the self-looped corrected graph. The two diagonal
// scalings are precomputed, so applying M costs one pass over A.
class NodeWiseOperator {
 public:
  NodeWiseOperator(SparseGraph looped, std::vector<double> r);

  const SparseGraph& graph() const { return graph_; }
  const DegreeVector& d_hat() const { return d_hat_; }
  const std::vector<double>& r() const { return r_; }
  std::size_t size() const { return graph_.num_nodes(); }

  double entry(NodeId u, NodeId v) const;

  // out = M x. Rows are independent and each row sums in CSR order.
  void apply(const FeatureMatrix& x, FeatureMatrix& out) const;

 private:
  SparseGraph graph_;
  DegreeVector d_hat_;
  std::vector<double> r_;
  std::vector<double> left_;   // d_u^(r_u - 1)
  std::vector<double> right_;  // d_v^(-r_v)
};

// Adds self-loops to the corrected graph and fixes the kernel. Every r must
// lie in [0,1].
NodeWiseOperator build_operator(const SparseGraph& g_corrected,
                                std::span<const double> r,
                                double self_loop_weight = 1.0);
NodeWiseOperator build_operator(const SparseGraph& g_corrected, double r,
                                double self_loop_weight = 1.0);

struct PropagatedFeatures {
  OutputMode mode = OutputMode::kSum;
  FeatureMatrix sum;               // sum mode
  std::vector<FeatureMatrix> hops; // concat mode, k + 1 entries
};

// Iterates x_i = M x_(i-1). With node depths, row u stops accumulating after
// hop l_u and its weights are rescaled so the row keeps the scheme's total.
// If the truncated weights are all zero (sgc), the total goes to hop l_u.
PropagatedFeatures propagate(const NodeWiseOperator& op, const FeatureMatrix& x,
                             const PropagationConfig& cfg);

}  // namespace atp

#endif  // ATP_PROPAGATION_HPP_
