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

#include "atp/correction.hpp"
#include "atp/dense.hpp"
#include "atp/error.hpp"
#include "atp/generate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace atp;

namespace {

// Principal adjacency eigenvector per component, max-normalized.
std::vector<double> oracle_eigenvector(const SparseGraph& g) {
  std::vector<double> out(g.num_nodes(), 0.0);
  for (const auto& nodes : connected_components(g).members()) {
    if (nodes.size() == 1) continue;
    const SparseGraph sub = induced_subgraph(g, nodes);
    const auto eig = dense::dense_eig_symmetric(dense::adjacency(sub));
    double peak = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      peak = std::max(peak, std::abs(eig.vectors(i, 0)));
    for (std::size_t i = 0; i < nodes.size(); ++i)
      out[nodes[i]] = std::abs(eig.vectors(i, 0)) / peak;
  }
  return out;
}

}  // namespace

TEST_SUITE("lnc") {

TEST_CASE("degree encoding") {
  CHECK(degree_encoding(complete_graph(3)) == std::vector<double>{1, 1, 1});
  CHECK(degree_encoding(star_graph(4)) ==
        std::vector<double>{1, 0.25, 0.25, 0.25, 0.25});

  MaskParams p;
  p.theta = 0.2;
  p.sparse_sample_ratio = 0.0;
  p.edge_mask_fraction = 0.5;
  const CorrectionResult res = apply_mask(star_graph(4), resolve_plan(star_graph(4), p));
  CHECK(degree_encoding(res.graph)[0] == 0.5);

  // Second order adds d^2 / (n - 1).
  CHECK(degree_encoding(star_graph(4), 2)[0] == doctest::Approx(5.0));
}

TEST_CASE("degree encoding is monotone in degree") {
  const SparseGraph g = erdos_renyi(80, 0.1, 3);
  const auto d = degrees(g).values;
  const auto r = degree_encoding(g);
  for (std::size_t u = 0; u < 80; ++u)
    for (std::size_t v = 0; v < 80; ++v)
      if (d[u] > d[v]) CHECK(r[u] > r[v]);
}

TEST_CASE("eigenvector encoding fixtures") {
  for (double v : eigenvector_encoding(cycle_graph(6)))
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  const auto star = eigenvector_encoding(star_graph(4));
  CHECK(star[0] == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 1; i < 5; ++i)
    CHECK(star[i] == doctest::Approx(0.5).epsilon(1e-9));
  const SparseGraph triangles =
      test::graph_of(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  for (double v : eigenvector_encoding(triangles))
    CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
  const SparseGraph isolated = test::graph_of(3, {{0, 1}});
  CHECK(eigenvector_encoding(isolated)[2] == 0.0);
}

TEST_CASE("eigenvector encoding matches the dense oracle") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 20 + 15 * seed;
    const SparseGraph g = erdos_renyi(n, seed % 3 == 0 ? 0.02 : 0.1, seed);
    const auto power = eigenvector_encoding(g);
    const auto oracle = oracle_eigenvector(g);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(power[i] - oracle[i]) < 1e-6);
  }
}

TEST_CASE("triangle counts and cluster encoding") {
  CHECK(triangle_counts(complete_graph(4)) ==
        std::vector<std::size_t>{3, 3, 3, 3});
  CHECK(cluster_encoding(complete_graph(3)) == std::vector<double>{2, 2, 2});
  CHECK(cluster_encoding(complete_graph(4)) == std::vector<double>{3, 3, 3, 3});
  CHECK(cluster_encoding(complete_graph(4), ClusterVariant::kStandard) ==
        std::vector<double>{1, 1, 1, 1});
  CHECK(cluster_encoding(star_graph(4))[0] == 0.0);
  for (const SparseGraph& g : {star_graph(6), path_graph(7), cycle_graph(8)})
    for (double v : cluster_encoding(g)) CHECK(v == 0.0);
  // A triangle edge masked to zero no longer closes the triangle.
  const SparseGraph masked = test::graph_of(3, {{0, 1}, {1, 2}, {0, 2, 0.0}});
  CHECK(triangle_counts(masked) == std::vector<std::size_t>{0, 0, 0});
}

TEST_CASE("combine") {
  EncodingConfig cfg;
  cfg.c_norm = 0.3;
  const auto zero = combine({0, 0}, {0, 0}, {0, 0}, cfg);
  CHECK(zero.r_tilde == std::vector<double>{0, 0});
  const auto big = combine({1, 2}, {1, 2}, {2, 2}, cfg);
  CHECK(big.r_tilde == std::vector<double>{1, 1});
  const auto mid = combine({0.5, 1.0}, {0.25, 0.5}, {0.25, 0.5}, cfg);
  CHECK(mid.r_tilde[0] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(mid.r_tilde[1] == doctest::Approx(0.6).epsilon(1e-15));
  cfg.use_eigen = false;
  CHECK(combine({0.5}, {0.5}, {0.0}, cfg).r_ev == std::vector<double>{0.0});
  CHECK_THROWS_AS(combine({0.5}, {0.5}, {0.0, 0.1}, cfg), ValidationError);
  cfg.c_norm = 0.0;
  CHECK_THROWS_AS(combine({0.5}, {0.5}, {0.0}, cfg), ValidationError);
}

TEST_CASE("encode respects the contract on random graphs") {
  EncodingConfig cfg;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SparseGraph g = erdos_renyi(60, 0.1, seed);
    const KernelCoefficients k = encode(g, cfg);
    for (std::size_t i = 0; i < 60; ++i) {
      CHECK((k.r_dg[i] >= 0 && k.r_dg[i] <= 1));
      CHECK((k.r_ev[i] >= 0 && k.r_ev[i] <= 1));
      CHECK(k.r_cu[i] >= 0);
      CHECK(k.r_tilde[i] ==
            std::clamp(cfg.c_norm * (k.r_dg[i] + k.r_ev[i] + k.r_cu[i]), 0.0, 1.0));
    }
  }
}

TEST_CASE("hubs get at least the coefficient of leaves") {
  const SparseGraph g = star_graph(8);
  const KernelCoefficients k = encode(g, {});
  for (std::size_t leaf = 1; leaf < 9; ++leaf) CHECK(k.r_tilde[0] >= k.r_tilde[leaf]);
}

TEST_CASE("isolated nodes encode to zero") {
  const KernelCoefficients k = encode(test::graph_of(4, {{0, 1}, {1, 2}, {0, 2}}), {});
  CHECK(k.r_dg[3] == 0.0);
  CHECK(k.r_ev[3] == 0.0);
  CHECK(k.r_cu[3] == 0.0);
  CHECK(k.r_tilde[3] == 0.0);
}

TEST_CASE("encodings refuse looped graphs") {
  const SparseGraph looped = add_self_loops(path_graph(3));
  CHECK_THROWS_AS(degree_encoding(looped), InvalidStateError);
  CHECK_THROWS_AS(encode(looped, {}), InvalidStateError);
}

TEST_CASE("cluster variant names") {
  CHECK(parse_cluster_variant("literal") == ClusterVariant::kLiteral);
  CHECK(parse_cluster_variant("standard") == ClusterVariant::kStandard);
  CHECK_THROWS_AS(parse_cluster_variant("other"), ValidationError);
}

}  // TEST_SUITE
