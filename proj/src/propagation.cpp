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


#include "atp/propagation.hpp"

#include <cmath>
#include <numeric>
#include <utility>

#include "atp/error.hpp"

namespace atp {

SchemeKind parse_scheme_kind(std::string_view name) {
  if (name == "sgc") return SchemeKind::kSgc;
  if (name == "s2gc") return SchemeKind::kS2gc;
  if (name == "gbp") return SchemeKind::kGbp;
  if (name == "heat") return SchemeKind::kHeat;
  if (name == "concat") return SchemeKind::kConcat;
  if (name == "custom") return SchemeKind::kCustom;
  throw ValidationError("unknown weight scheme '" + std::string(name) + "'");
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::kSgc: return "sgc";
    case SchemeKind::kS2gc: return "s2gc";
    case SchemeKind::kGbp: return "gbp";
    case SchemeKind::kHeat: return "heat";
    case SchemeKind::kConcat: return "concat";
    case SchemeKind::kCustom: return "custom";
  }
  return "unknown";
}

std::vector<double> scheme_weights(const WeightScheme& scheme, int k) {
  if (k < 0) throw ValidationError("hop count must be >= 0");
  const std::size_t len = static_cast<std::size_t>(k) + 1;
  std::vector<double> w(len, 0.0);
  switch (scheme.kind) {
    case SchemeKind::kSgc:
      w[k] = 1.0;
      break;
    case SchemeKind::kS2gc:
      for (auto& x : w) x = 1.0 / static_cast<double>(len);
      break;
    case SchemeKind::kGbp: {
      if (!(scheme.beta > 0.0 && scheme.beta < 1.0))
        throw ValidationError("gbp beta must lie in (0,1)");
      double decay = 1.0;
      for (auto& x : w) {
        x = scheme.beta * decay;
        decay *= 1.0 - scheme.beta;
      }
      break;
    }
    case SchemeKind::kHeat: {
      if (!(scheme.omega > 0.0) || !std::isfinite(scheme.omega))
        throw ValidationError("heat omega must be > 0");
      if (!(scheme.rho > 0.0) || !std::isfinite(scheme.rho))
        throw ValidationError("heat rho must be > 0");
      double term = 1.0;
      for (std::size_t l = 0; l < len; ++l) {
        if (l > 0) term *= scheme.omega / std::pow(double(l), scheme.rho);
        w[l] = term;
      }
      const double c = std::accumulate(w.begin(), w.end(), 0.0);
      for (auto& x : w) x /= c;
      break;
    }
    case SchemeKind::kConcat:
      for (auto& x : w) x = 1.0;
      break;
    case SchemeKind::kCustom:
      if (scheme.custom.size() != len)
        throw ValidationError("custom weights need k+1 = " +
                              std::to_string(len) + " entries");
      w = scheme.custom;
      break;
  }
  for (double x : w)
    if (!std::isfinite(x)) throw ValidationError("scheme weights must be finite");
  return w;
}

NodeWiseOperator::NodeWiseOperator(SparseGraph looped, std::vector<double> r)
    : graph_(std::move(looped)), d_hat_(degrees(graph_)), r_(std::move(r)) {
  const std::size_t n = graph_.num_nodes();
  if (r_.size() != n)
    throw ValidationError("kernel has " + std::to_string(r_.size()) +
                          " entries for " + std::to_string(n) + " nodes");
  left_.resize(n);
  right_.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    if (!(r_[u] >= 0.0 && r_[u] <= 1.0))
      throw ValidationError("kernel coefficient of node " + std::to_string(u) +
                            " outside [0,1]");
    const double d = d_hat_.values[u];
    if (!(d > 0.0))
      throw NumericError("degenerate degree at node " + std::to_string(u));
    left_[u] = degree_power(d, r_[u] - 1.0);
    right_[u] = degree_power(d, -r_[u]);
  }
}

double NodeWiseOperator::entry(NodeId u, NodeId v) const {
  return left_[u] * graph_.weight(u, v) * right_[v];
}

void NodeWiseOperator::apply(const FeatureMatrix& x, FeatureMatrix& out) const {
  const std::size_t n = size();
  const std::size_t f = x.cols();
  if (out.rows() != n || out.cols() != f) out = FeatureMatrix(n, f);
#pragma omp parallel for schedule(static)
  for (std::size_t u = 0; u < n; ++u) {
    auto dst = out.row(u);
    std::fill(dst.begin(), dst.end(), 0.0);
    for (EdgeIndex e = graph_.row_begin(u); e < graph_.row_end(u); ++e) {
      const NodeId v = graph_.col(e);
      const double a = graph_.edge_weight(e) * right_[v];
      if (a == 0.0) continue;
      const auto src = x.row(v);
      for (std::size_t c = 0; c < f; ++c) dst[c] += a * src[c];
    }
    for (std::size_t c = 0; c < f; ++c) dst[c] *= left_[u];
  }
}

NodeWiseOperator build_operator(const SparseGraph& g_corrected,
                                std::span<const double> r,
                                double self_loop_weight) {
  return NodeWiseOperator(add_self_loops(g_corrected, self_loop_weight),
                          std::vector<double>(r.begin(), r.end()));
}

NodeWiseOperator build_operator(const SparseGraph& g_corrected, double r,
                                double self_loop_weight) {
  std::vector<double> broadcast(g_corrected.num_nodes(), r);
  return build_operator(g_corrected, broadcast, self_loop_weight);
}

namespace {

void check_finite(const FeatureMatrix& x, int hop) {
  for (double v : x.data())
    if (!std::isfinite(v))
      throw NumericError("non-finite value after hop " + std::to_string(hop));
}

// Per-row weight table for depth-truncated propagation: rows with l_u == k
// share the scheme weights untouched.
std::vector<double> truncated_weights(const std::vector<double>& w, int depth) {
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  double partial = 0.0;
  for (int i = 0; i <= depth; ++i) partial += w[i];
  std::vector<double> out(w.size(), 0.0);
  if (partial != 0.0) {
    for (int i = 0; i <= depth; ++i) out[i] = w[i] * (total / partial);
  } else {
    out[depth] = total;
  }
  return out;
}

}  // namespace

PropagatedFeatures propagate(const NodeWiseOperator& op, const FeatureMatrix& x,
                             const PropagationConfig& cfg) {
  const std::size_t n = op.size();
  if (x.rows() != n)
    throw ValidationError("feature matrix has " + std::to_string(x.rows()) +
                          " rows for " + std::to_string(n) + " nodes");
  const bool concat = cfg.mode == OutputMode::kConcat ||
                      cfg.scheme.kind == SchemeKind::kConcat;
  const std::vector<double> w = scheme_weights(cfg.scheme, cfg.k);
  const int k = cfg.k;

  PropagatedFeatures result;
  result.mode = concat ? OutputMode::kConcat : OutputMode::kSum;

  if (concat) {
    if (cfg.node_depths)
      throw ValidationError("node depths apply to sum mode only");
    result.hops.reserve(k + 1);
    result.hops.push_back(x);
    for (int i = 1; i <= k; ++i) {
      FeatureMatrix next;
      op.apply(result.hops.back(), next);
      check_finite(next, i);
      result.hops.push_back(std::move(next));
    }
    return result;
  }

  // Row u uses row_weights[slot[u]]; slot 0 is the untruncated scheme.
  std::vector<std::vector<double>> row_weights{w};
  std::vector<std::size_t> slot(n, 0);
  if (cfg.node_depths) {
    const auto& depths = *cfg.node_depths;
    if (depths.size() != n)
      throw ValidationError("node depth vector length does not match graph");
    std::vector<std::size_t> by_depth(k + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
      const int l = depths[u];
      if (l < 0 || l > k)
        throw ValidationError("node depth of " + std::to_string(u) +
                              " outside [0,k]");
      if (l == k) continue;
      if (by_depth[l] == 0) {
        by_depth[l] = row_weights.size();
        row_weights.push_back(truncated_weights(w, l));
      }
      slot[u] = by_depth[l];
    }
  }

  const std::size_t f = x.cols();
  FeatureMatrix acc(n, f);
  for (std::size_t u = 0; u < n; ++u) {
    const double w0 = row_weights[slot[u]][0];
    for (std::size_t c = 0; c < f; ++c) acc(u, c) = w0 * x(u, c);
  }
  FeatureMatrix cur = x;
  FeatureMatrix next;
  for (int i = 1; i <= k; ++i) {
    op.apply(cur, next);
    check_finite(next, i);
    std::swap(cur, next);
    for (std::size_t u = 0; u < n; ++u) {
      const double wi = row_weights[slot[u]][i];
      if (wi == 0.0) continue;
      for (std::size_t c = 0; c < f; ++c) acc(u, c) += wi * cur(u, c);
    }
  }
  result.sum = std::move(acc);
  return result;
}

}  // namespace atp
