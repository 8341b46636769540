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


#include "atp/lnc.hpp"

#include <algorithm>
#include <cmath>

#include "atp/error.hpp"

namespace atp {
namespace {

void require_loop_free(const SparseGraph& g) {
  if (g.has_self_loops())
    throw InvalidStateError("encodings read the graph without self-loops");
}

// sum_{j=1..k} d^j
double degree_power_sum(double d, int k) {
  double term = 1.0, s = 0.0;
  for (int j = 1; j <= k; ++j) {
    term *= d;
    s += term;
  }
  return s;
}

std::vector<NodeId> active_neighbors(const SparseGraph& g, NodeId u) {
  std::vector<NodeId> out;
  for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
    if (g.col(e) != u && g.edge_weight(e) > 0.0) out.push_back(g.col(e));
  return out;
}

}  // namespace

ClusterVariant parse_cluster_variant(std::string_view name) {
  if (name == "literal") return ClusterVariant::kLiteral;
  if (name == "standard") return ClusterVariant::kStandard;
  throw ValidationError("unknown cluster variant '" + std::string(name) + "'");
}

std::string cluster_variant_name(ClusterVariant v) {
  return v == ClusterVariant::kLiteral ? "literal" : "standard";
}

void EncodingConfig::validate() const {
  if (!(c_norm > 0.0 && c_norm <= 1.0))
    throw ValidationError("c_norm must lie in (0,1]");
  if (!(power_iter_tol > 0.0)) throw ValidationError("power_tol must be > 0");
  if (power_iter_max == 0) throw ValidationError("power_iter_max must be > 0");
  if (k_order < 1) throw ValidationError("k_order must be >= 1");
}

std::vector<double> degree_encoding(const SparseGraph& g, int k_order) {
  require_loop_free(g);
  const std::size_t n = g.num_nodes();
  std::vector<double> r(n, 0.0);
  if (n < 2) return r;
  const DegreeVector d = degrees(g);
  for (std::size_t i = 0; i < n; ++i)
    r[i] = degree_power_sum(d.values[i], k_order) / double(n - 1);
  return r;
}

std::vector<double> eigenvector_encoding(const SparseGraph& g,
                                         const EncodingConfig& cfg) {
  require_loop_free(g);
  cfg.validate();
  const std::size_t n = g.num_nodes();
  if (n == 0) throw ValidationError("eigenvector encoding needs nodes");

  const Components comps = connected_components(g);
  const auto groups = comps.members();
  std::vector<char> trivial(comps.count, 0);
  for (std::size_t c = 0; c < comps.count; ++c)
    trivial[c] = groups[c].size() < 2;

  std::vector<double> x(n, 1.0), y(n, 0.0), peak(comps.count);
  double change = 0.0;
  for (std::size_t it = 0; it < cfg.power_iter_max; ++it) {
#pragma omp parallel for schedule(static)
    for (std::size_t u = 0; u < n; ++u) {
      double s = x[u];
      for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
        s += g.edge_weight(e) * x[g.col(e)];
      y[u] = s;
    }
    std::fill(peak.begin(), peak.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u)
      peak[comps.id[u]] = std::max(peak[comps.id[u]], y[u]);
    change = 0.0;
    for (std::size_t u = 0; u < n; ++u) {
      const double next = y[u] / peak[comps.id[u]];
      change = std::max(change, std::abs(next - x[u]));
      x[u] = next;
    }
    if (change < cfg.power_iter_tol) {
      for (std::size_t u = 0; u < n; ++u)
        if (trivial[comps.id[u]]) x[u] = 0.0;
      return x;
    }
  }
  throw ConvergenceError("eigenvector power iteration did not converge",
                         change);
}

std::vector<std::size_t> triangle_counts(const SparseGraph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<NodeId>> nb(n);
  for (NodeId u = 0; u < n; ++u) nb[u] = active_neighbors(g, u);

  std::vector<std::size_t> t(n, 0);
  // Each triangle u < v < w is found once from its lowest corner.
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : nb[u]) {
      if (v <= u) continue;
      auto a = std::upper_bound(nb[u].begin(), nb[u].end(), v);
      auto b = std::upper_bound(nb[v].begin(), nb[v].end(), v);
      while (a != nb[u].end() && b != nb[v].end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++t[u];
          ++t[v];
          ++t[*a];
          ++a;
          ++b;
        }
      }
    }
  }
  return t;
}

std::vector<double> cluster_encoding(const SparseGraph& g,
                                     ClusterVariant variant, int k_order) {
  require_loop_free(g);
  if (k_order < 1) throw ValidationError("k_order must be >= 1");
  const std::size_t n = g.num_nodes();
  const DegreeVector d = degrees(g);
  const auto tri = triangle_counts(g);
  std::vector<double> r(n, 0.0);
  for (NodeId i = 0; i < n; ++i) {
    const double di = d.values[i];
    const double denom = di * (di - 1.0);
    if (active_degree(g, i) < 2 || !(denom > 0.0)) continue;
    const double links = 2.0 * double(tri[i]);
    const double scale =
        variant == ClusterVariant::kLiteral ? degree_power_sum(di, k_order)
                                            : 1.0;
    r[i] = scale * links / denom;
  }
  return r;
}

KernelCoefficients combine(std::vector<double> r_dg, std::vector<double> r_ev,
                           std::vector<double> r_cu,
                           const EncodingConfig& cfg) {
  cfg.validate();
  const std::size_t n = r_dg.size();
  if (!cfg.use_eigen) r_ev.assign(n, 0.0);
  if (r_ev.size() != n || r_cu.size() != n)
    throw ValidationError("encoding vectors differ in length");
  KernelCoefficients k;
  k.c_norm = cfg.c_norm;
  k.r_tilde.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    k.r_tilde[i] =
        std::clamp(cfg.c_norm * (r_dg[i] + r_ev[i] + r_cu[i]), 0.0, 1.0);
  k.r_dg = std::move(r_dg);
  k.r_ev = std::move(r_ev);
  k.r_cu = std::move(r_cu);
  return k;
}

KernelCoefficients encode(const SparseGraph& g_corrected,
                          const EncodingConfig& cfg) {
  cfg.validate();
  auto r_dg = degree_encoding(g_corrected, cfg.k_order);
  auto r_ev = cfg.use_eigen && g_corrected.num_nodes() > 0
                  ? eigenvector_encoding(g_corrected, cfg)
                  : std::vector<double>(g_corrected.num_nodes(), 0.0);
  auto r_cu = cluster_encoding(g_corrected, cfg.cluster_variant, cfg.k_order);
  return combine(std::move(r_dg), std::move(r_ev), std::move(r_cu), cfg);
}

}  // namespace atp
