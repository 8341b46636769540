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


#include "atp/correction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "json.hpp"

#include "atp/dense.hpp"
#include "atp/error.hpp"
#include "atp/rng.hpp"
#include "atp/spectral.hpp"

namespace atp {
namespace {

// theta * n is computed in floating point; 0.7 * 10 must count as 7.
constexpr double kCountEps = 1e-9;

void check_fraction(double x, double hi, const char* name) {
  if (!(x >= 0.0 && x <= hi))
    throw ValidationError(std::string(name) + " must lie in [0," +
                          (hi == 1.0 ? "1" : "0.5") + "]");
}

void require_loop_free(const SparseGraph& g) {
  if (g.has_self_loops())
    throw InvalidStateError("masking runs before self-loop insertion");
}

}  // namespace

void MaskParams::validate() const {
  check_fraction(theta, 1.0, "theta");
  check_fraction(sparse_sample_ratio, 0.5, "sparse_sample_ratio");
  check_fraction(edge_mask_fraction, 1.0, "edge_mask_fraction");
  check_fraction(mask_token, 1.0, "mask_token");
}

std::string CorrectionReport::to_json() const {
  nlohmann::ordered_json j;
  j["edges_before"] = edges_before;
  j["edges_masked"] = edges_masked;
  j["edges_removed"] = edges_removed;
  j["selected_nodes"] = degree_reduction.size();
  auto& red = j["degree_reduction"] = nlohmann::ordered_json::array();
  for (const auto& [u, delta] : degree_reduction)
    red.push_back({{"node", u}, {"reduction", delta}});
  return j.dump(2) + "\n";
}

std::vector<NodeId> select_nodes(const SparseGraph& g, double theta,
                                 double sparse_sample_ratio,
                                 std::uint64_t seed) {
  check_fraction(theta, 1.0, "theta");
  check_fraction(sparse_sample_ratio, 0.5, "sparse_sample_ratio");
  require_loop_free(g);

  const std::size_t n = g.num_nodes();
  const DegreeVector d = degrees(g);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return d.values[a] > d.values[b];
  });

  const auto top = std::min<std::size_t>(
      n, static_cast<std::size_t>(std::ceil(theta * double(n) - kCountEps)));
  std::vector<NodeId> selected(order.begin(), order.begin() + top);

  std::vector<NodeId> rest(order.begin() + top, order.end());
  std::sort(rest.begin(), rest.end());
  const auto extra = static_cast<std::size_t>(
      std::floor(sparse_sample_ratio * double(rest.size()) + kCountEps));
  Rng rng(sub_seed(seed, "select"));
  for (auto idx : rng.sample_without_replacement(rest.size(), extra))
    selected.push_back(rest[idx]);

  std::sort(selected.begin(), selected.end());
  return selected;
}

std::vector<NodeId> select_nodes_epsilon(const SparseGraph& g, double epsilon,
                                         int k,
                                         std::optional<double> lambda2) {
  require_loop_free(g);
  if (std::isnan(epsilon) || epsilon < 0.0)
    throw ValidationError("epsilon must be >= 0");
  if (k < 0) throw ValidationError("k must be >= 0");
  const SparseGraph looped = add_self_loops(g);

  std::vector<double> bounds;
  if (lambda2) {
    for (NodeId i = 0; i < looped.num_nodes(); ++i)
      bounds.push_back(convergence_bound(looped, i, k, *lambda2));
  } else {
    if (g.num_nodes() > dense::kDenseLimit)
      throw CapabilityError(
          "epsilon selection needs lambda2 for graphs above the dense limit");
    for (const auto& nc : bound_report(looped, k, EigenMethod::kDense).per_node)
      bounds.push_back(nc.bound);
  }

  std::vector<NodeId> out;
  for (NodeId i = 0; i < bounds.size(); ++i)
    if (bounds[i] > epsilon) out.push_back(i);
  return out;
}

MaskPlan plan_mask(const SparseGraph& g, std::vector<NodeId> selected,
                   const MaskParams& params) {
  params.validate();
  require_loop_free(g);
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()),
                 selected.end());
  for (NodeId u : selected)
    if (u >= g.num_nodes())
      throw ValidationError("selected node " + std::to_string(u) +
                            " out of range");

  std::vector<char> is_selected(g.num_nodes(), 0);
  for (NodeId u : selected) is_selected[u] = 1;

  MaskPlan plan{params, selected, {}};
  const std::uint64_t mask_seed = sub_seed(params.seed, "mask");
  for (NodeId u : selected) {
    std::vector<NodeId> pool;
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e) {
      const NodeId v = g.col(e);
      if (g.edge_weight(e) <= 0.0) continue;
      if (is_selected[v] && v < u) continue;  // lower id owns the edge
      pool.push_back(v);
    }
    const auto quota = static_cast<std::size_t>(std::floor(
        params.edge_mask_fraction * double(active_degree(g, u)) + kCountEps));
    Rng rng(sub_seed(mask_seed, std::to_string(u)));
    const auto order = rng.sample_without_replacement(pool.size(), pool.size());
    for (std::size_t i = 0; i < std::min(quota, pool.size()); ++i) {
      const NodeId v = pool[order[i]];
      plan.masked_edges.emplace_back(std::min(u, v), std::max(u, v));
    }
  }
  std::sort(plan.masked_edges.begin(), plan.masked_edges.end());
  return plan;
}

MaskPlan resolve_plan(const SparseGraph& g, const MaskParams& params) {
  params.validate();
  return plan_mask(g,
                   select_nodes(g, params.theta, params.sparse_sample_ratio,
                                params.seed),
                   params);
}

CorrectionResult apply_mask(const SparseGraph& g, const MaskPlan& plan) {
  plan.params.validate();
  require_loop_free(g);
  const std::size_t n = g.num_nodes();
  for (NodeId u : plan.selected_nodes)
    if (u >= n)
      throw ValidationError("plan selects node " + std::to_string(u) +
                            " outside the graph");

  std::set<std::pair<NodeId, NodeId>> masked(plan.masked_edges.begin(),
                                             plan.masked_edges.end());
  for (const auto& [u, v] : masked) {
    if (u >= n || v >= n || u == v ||
        !std::ranges::binary_search(g.neighbors(u), v))
      throw ValidationError("plan masks (" + std::to_string(u) + "," +
                            std::to_string(v) + ") which is not an edge");
  }

  const DegreeVector before = degrees(g);
  std::vector<Edge> edges = g.edges();
  for (Edge& e : edges)
    if (masked.count({e.u, e.v})) e.w *= plan.params.mask_token;
  CorrectionResult out{SparseGraph::from_edges(n, edges), {}};
  if (g.weighted() && !out.graph.weighted()) {
    std::vector<double> ones(out.graph.num_stored(), 1.0);
    out.graph = SparseGraph(n, out.graph.row_offsets(),
                            out.graph.col_indices(), std::move(ones));
  }

  const DegreeVector after = degrees(out.graph);
  out.report.edges_before = g.num_edges();
  out.report.edges_masked = masked.size();
  out.report.edges_removed =
      plan.params.mask_token == 0.0 ? masked.size() : 0;
  for (NodeId u : plan.selected_nodes)
    out.report.degree_reduction.emplace_back(
        u, before.values[u] - after.values[u]);
  return out;
}

}  // namespace atp
