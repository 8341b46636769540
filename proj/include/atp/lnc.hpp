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


#ifndef ATP_LNC_HPP_
#define ATP_LNC_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

// literal:  d * 2T / (d (d - 1))   (the degree factor kept as written)
// standard: 2T / (d (d - 1))       (local clustering coefficient)
enum class ClusterVariant { kLiteral, kStandard };

ClusterVariant parse_cluster_variant(std::string_view name);
std::string cluster_variant_name(ClusterVariant v);

struct EncodingConfig {
  bool use_eigen = true;
  double c_norm = 0.3;
  double power_iter_tol = 1e-10;
  std::size_t power_iter_max = 10000;
  int k_order = 1;
  ClusterVariant cluster_variant = ClusterVariant::kLiteral;

  void validate() const;
};

struct KernelCoefficients {
  std::vector<double> r_dg;
  std::vector<double> r_ev;
  std::vector<double> r_cu;
  double c_norm = 1.0;
  std::vector<double> r_tilde;  // clamp(c_norm * (r_dg + r_ev + r_cu), 0, 1)
};

// All encodings read the corrected graph before self-loops are added.

// sum_{j=1..k_order} d_i^j / (n - 1); zero when n == 1.
std::vector<double> degree_encoding(const SparseGraph& g, int k_order = 1);

// Perron vector of each component's adjacency, max entry scaled to 1.
// Iterates x <- (A + I) x from all-ones; the shift has the same Perron vector
// and keeps bipartite components from oscillating. Isolated nodes get 0.
std::vector<double> eigenvector_encoding(const SparseGraph& g,
                                         const EncodingConfig& cfg = {});

// Triangles through each node, counting positive-weight edges only.
std::vector<std::size_t> triangle_counts(const SparseGraph& g);

// Nodes with fewer than two active neighbors, or weighted degree <= 1, get 0.
std::vector<double> cluster_encoding(
    const SparseGraph& g, ClusterVariant variant = ClusterVariant::kLiteral,
    int k_order = 1);

KernelCoefficients combine(std::vector<double> r_dg, std::vector<double> r_ev,
                           std::vector<double> r_cu, const EncodingConfig& cfg);

// Runs all three encodings and combines them.
KernelCoefficients encode(const SparseGraph& g_corrected,
                          const EncodingConfig& cfg);

}  // namespace atp

#endif  // ATP_LNC_HPP_
