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


#include "atp/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>
#include <utility>

#include "atp/error.hpp"

namespace atp {

SparseGraph::SparseGraph(std::size_t n, std::vector<EdgeIndex> row_offsets,
                         std::vector<NodeId> col_indices,
                         std::vector<double> edge_weights)
    : n_(n),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      edge_weights_(std::move(edge_weights)) {
  if (row_offsets_.size() != n_ + 1 || row_offsets_.front() != 0)
    throw ValidationError("row_offsets must have n+1 entries starting at 0");
  if (row_offsets_.back() != col_indices_.size())
    throw ValidationError("row_offsets[n] must equal len(col_indices)");
  if (!edge_weights_.empty() && edge_weights_.size() != col_indices_.size())
    throw ValidationError("edge_weights length must match col_indices");

  for (std::size_t u = 0; u < n_; ++u) {
    if (row_offsets_[u] > row_offsets_[u + 1])
      throw ValidationError("row_offsets must be non-decreasing");
    for (EdgeIndex e = row_offsets_[u]; e < row_offsets_[u + 1]; ++e) {
      const NodeId v = col_indices_[e];
      if (v >= n_)
        throw ValidationError("column index " + std::to_string(v) +
                              " out of range");
      if (e > row_offsets_[u] && col_indices_[e - 1] >= v)
        throw ValidationError("row " + std::to_string(u) +
                              " is not strictly increasing");
      const double w = edge_weight(e);
      if (!std::isfinite(w) || w < 0.0)
        throw ValidationError("edge weights must be finite and >= 0");
      if (v == u) {
        has_self_loops_ = true;
      } else if (u < v) {
        ++num_edges_;
      }
    }
  }
  for (NodeId u = 0; u < n_; ++u) {
    for (EdgeIndex e = row_offsets_[u]; e < row_offsets_[u + 1]; ++e) {
      const NodeId v = col_indices_[e];
      if (v == u) continue;
      auto nb = neighbors(v);
      auto it = std::lower_bound(nb.begin(), nb.end(), u);
      if (it == nb.end() || *it != u)
        throw ValidationError("edge (" + std::to_string(u) + "," +
                              std::to_string(v) + ") has no reverse");
      const EdgeIndex back = row_offsets_[v] + (it - nb.begin());
      if (edge_weight(back) != edge_weight(e))
        throw ValidationError("asymmetric weight on edge (" +
                              std::to_string(u) + "," + std::to_string(v) +
                              ")");
    }
  }
}

SparseGraph SparseGraph::from_edges(std::size_t n,
                                    std::span<const Edge> edges) {
  std::map<std::pair<NodeId, NodeId>, double> merged;
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n)
      throw ValidationError("edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") exceeds node count " +
                            std::to_string(n));
    if (!std::isfinite(e.w) || e.w < 0.0)
      throw ValidationError("edge weights must be finite and >= 0");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
  }

  std::vector<std::vector<std::pair<NodeId, double>>> rows(n);
  bool weighted = false;
  for (const auto& [key, w] : merged) {
    rows[key.first].emplace_back(key.second, w);
    if (key.first != key.second) rows[key.second].emplace_back(key.first, w);
    weighted = weighted || w != 1.0;
  }

  std::vector<EdgeIndex> offsets(n + 1, 0);
  std::vector<NodeId> cols;
  std::vector<double> weights;
  for (std::size_t u = 0; u < n; ++u) {
    std::sort(rows[u].begin(), rows[u].end());
    for (const auto& [v, w] : rows[u]) {
      cols.push_back(v);
      if (weighted) weights.push_back(w);
    }
    offsets[u + 1] = cols.size();
  }
  return SparseGraph(n, std::move(offsets), std::move(cols),
                     std::move(weights));
}

double SparseGraph::weight(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0.0;
  return edge_weight(row_offsets_[u] + (it - nb.begin()));
}

std::vector<Edge> SparseGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges_ + n_);
  for (NodeId u = 0; u < n_; ++u)
    for (EdgeIndex e = row_begin(u); e < row_end(u); ++e)
      if (col(e) >= u) out.push_back({u, col(e), edge_weight(e)});
  return out;
}

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw ValidationError("feature data size does not match rows*cols");
  for (double x : data_)
    if (!std::isfinite(x))
      throw ValidationError("feature matrix contains a non-finite entry");
}

std::vector<std::vector<NodeId>> Components::members() const {
  std::vector<std::vector<NodeId>> out(count);
  for (NodeId u = 0; u < id.size(); ++u) out[id[u]].push_back(u);
  return out;
}

DegreeVector degrees(const SparseGraph& g) {
  DegreeVector d{std::vector<double>(g.num_nodes(), 0.0)};
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    double s = 0.0;
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
      s += g.edge_weight(e);
    d.values[u] = s;
  }
  return d;
}

double degree_power(double d, double e) {
  if (e == 0.0) return 1.0;
  if (e == -0.5) return 1.0 / std::sqrt(d);
  if (e == -1.0) return 1.0 / d;
  return std::pow(d, e);
}

std::size_t active_degree(const SparseGraph& g, NodeId u) {
  std::size_t c = 0;
  for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
    if (g.col(e) != u && g.edge_weight(e) > 0.0) ++c;
  return c;
}

SparseGraph add_self_loops(const SparseGraph& g, double weight) {
  if (g.has_self_loops())
    throw InvalidStateError("graph already has self-loops");
  if (!std::isfinite(weight) || weight < 0.0)
    throw ValidationError("self-loop weight must be finite and >= 0");

  const std::size_t n = g.num_nodes();
  const bool weighted = g.weighted() || weight != 1.0;
  std::vector<EdgeIndex> offsets(n + 1, 0);
  std::vector<NodeId> cols;
  std::vector<double> weights;
  cols.reserve(g.num_stored() + n);
  for (NodeId u = 0; u < n; ++u) {
    bool placed = false;
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e) {
      if (!placed && g.col(e) > u) {
        cols.push_back(u);
        if (weighted) weights.push_back(weight);
        placed = true;
      }
      cols.push_back(g.col(e));
      if (weighted) weights.push_back(g.edge_weight(e));
    }
    if (!placed) {
      cols.push_back(u);
      if (weighted) weights.push_back(weight);
    }
    offsets[u + 1] = cols.size();
  }
  return SparseGraph(n, std::move(offsets), std::move(cols),
                     std::move(weights));
}

Components connected_components(const SparseGraph& g) {
  constexpr NodeId kUnset = static_cast<NodeId>(-1);
  Components c{std::vector<NodeId>(g.num_nodes(), kUnset), 0};
  std::queue<NodeId> frontier;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (c.id[s] != kUnset) continue;
    const NodeId label = static_cast<NodeId>(c.count++);
    c.id[s] = label;
    frontier.push(s);
    while (!frontier.empty()) {
      const NodeId u = frontier.front();
      frontier.pop();
      for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e) {
        const NodeId v = g.col(e);
        if (g.edge_weight(e) > 0.0 && c.id[v] == kUnset) {
          c.id[v] = label;
          frontier.push(v);
        }
      }
    }
  }
  return c;
}

SparseGraph induced_subgraph(const SparseGraph& g,
                             std::span<const NodeId> nodes) {
  constexpr NodeId kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> local(g.num_nodes(), kAbsent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i] >= g.num_nodes() || (i > 0 && nodes[i] <= nodes[i - 1]))
      throw ValidationError("induced_subgraph needs sorted in-range ids");
    local[nodes[i]] = static_cast<NodeId>(i);
  }
  std::vector<EdgeIndex> offsets(nodes.size() + 1, 0);
  std::vector<NodeId> cols;
  std::vector<double> weights;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeId u = nodes[i];
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e) {
      const NodeId v = local[g.col(e)];
      if (v == kAbsent) continue;
      cols.push_back(v);
      if (g.weighted()) weights.push_back(g.edge_weight(e));
    }
    offsets[i + 1] = cols.size();
  }
  return SparseGraph(nodes.size(), std::move(offsets), std::move(cols),
                     std::move(weights));
}

SparseGraph permute(const SparseGraph& g, std::span<const NodeId> perm) {
  if (perm.size() != g.num_nodes())
    throw ValidationError("permutation length must equal node count");
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges) {
    e.u = perm[e.u];
    e.v = perm[e.v];
  }
  SparseGraph out = SparseGraph::from_edges(g.num_nodes(), edges);
  // from_edges drops the weight vector when every weight is 1; keep the
  // representation aligned with the source graph.
  if (g.weighted() && !out.weighted()) {
    std::vector<double> ones(out.num_stored(), 1.0);
    return SparseGraph(out.num_nodes(), out.row_offsets(), out.col_indices(),
                       std::move(ones));
  }
  return out;
}

}  // namespace atp
