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


#ifndef ATP_GRAPH_HPP_
#define ATP_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace atp {

using NodeId = std::uint32_t;
using EdgeIndex = std::uint64_t;

// One undirected edge as supplied to SparseGraph::from_edges. u == v denotes a
// self-loop.
struct Edge {
  NodeId u;
  NodeId v;
  double w = 1.0;
};

// Undirected graph in CSR form. Both directions of every non-loop edge are
// stored; a self-loop is stored once in its own row. Immutable once built.
//
// Invariants checked on construction:
//   - row_offsets non-decreasing, row_offsets[n] == col_indices.size()
//   - col indices in range and strictly increasing within a row
//   - weights finite and >= 0, and (u,v,w) stored iff (v,u,w) stored
//
// Weight 0 marks a masked edge. Such edges stay in the structure but do not
// contribute to degrees or connectivity.
class SparseGraph {
 public:
  SparseGraph() : row_offsets_(1, 0) {}
  SparseGraph(std::size_t n, std::vector<EdgeIndex> row_offsets,
              std::vector<NodeId> col_indices,
              std::vector<double> edge_weights);

  // Builds the canonical CSR from an undirected edge list. Repeated pairs
  // collapse by summing weights. Weights are kept only if some weight != 1.
  static SparseGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_stored() const { return col_indices_.size(); }
  // Undirected non-loop edges, including weight-0 ones.
  std::size_t num_edges() const { return num_edges_; }
  bool has_self_loops() const { return has_self_loops_; }
  bool weighted() const { return !edge_weights_.empty(); }

  EdgeIndex row_begin(NodeId u) const { return row_offsets_[u]; }
  EdgeIndex row_end(NodeId u) const { return row_offsets_[u + 1]; }
  NodeId col(EdgeIndex e) const { return col_indices_[e]; }
  double edge_weight(EdgeIndex e) const {
    return edge_weights_.empty() ? 1.0 : edge_weights_[e];
  }
  std::span<const NodeId> neighbors(NodeId u) const {
    return {col_indices_.data() + row_offsets_[u],
            col_indices_.data() + row_offsets_[u + 1]};
  }

  // Stored weight of (u,v), or 0 when the pair is absent.
  double weight(NodeId u, NodeId v) const;

  // Undirected edges with u <= v in CSR order.
  std::vector<Edge> edges() const;

  const std::vector<EdgeIndex>& row_offsets() const { return row_offsets_; }
  const std::vector<NodeId>& col_indices() const { return col_indices_; }
  // Empty for unweighted graphs.
  const std::vector<double>& edge_weights() const { return edge_weights_; }

  friend bool operator==(const SparseGraph&, const SparseGraph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<EdgeIndex> row_offsets_;
  std::vector<NodeId> col_indices_;
  std::vector<double> edge_weights_;
  std::size_t num_edges_ = 0;
  bool has_self_loops_ = false;
};

struct DegreeVector {
  std::vector<double> values;
};

// Dense n x f block, row-major. Entries must be finite.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr int kUnlabeled = -1;

struct LabelVector {
  std::vector<int> values;
};

struct Components {
  std::vector<NodeId> id;  // dense in [0, count)
  std::size_t count = 0;

  std::vector<std::vector<NodeId>> members() const;
};

// Weighted degree per node, self-loop weight included.
DegreeVector degrees(const SparseGraph& g);

// Count of incident non-loop edges with positive weight.
// d^e with the closed forms 1, 1/sqrt(d) and 1/d for e = 0, -1/2, -1.
double degree_power(double d, double e);

std::size_t active_degree(const SparseGraph& g, NodeId u);

// Throws InvalidStateError if g already carries a self-loop.
SparseGraph add_self_loops(const SparseGraph& g, double weight = 1.0);

// Weight-0 edges do not connect. Ids follow the order of each component's
// smallest node.
Components connected_components(const SparseGraph& g);

// Subgraph on `nodes` (sorted ascending), relabeled to 0..nodes.size()-1.
SparseGraph induced_subgraph(const SparseGraph& g,
                             std::span<const NodeId> nodes);

// Relabels node u to perm[u].
SparseGraph permute(const SparseGraph& g, std::span<const NodeId> perm);

}  // namespace atp

#endif  // ATP_GRAPH_HPP_
