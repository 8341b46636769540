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


#ifndef ATP_TESTS_SUPPORT_HPP_
#define ATP_TESTS_SUPPORT_HPP_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "atp/generate.hpp"
#include "atp/graph.hpp"
#include "atp/rng.hpp"

namespace atp::test {

inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::path(ATP_TEST_TMP) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline SparseGraph graph_of(std::size_t n, std::vector<Edge> edges) {
  return SparseGraph::from_edges(n, edges);
}

// Seeded ER graph redrawn until it has a single component.
inline SparseGraph connected_er(std::size_t n, double p, std::uint64_t seed) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    SparseGraph g = erdos_renyi(n, p, sub_seed(seed, std::to_string(attempt)));
    if (connected_components(g).count == 1) return g;
  }
}

inline FeatureMatrix uniform_features(std::size_t n, std::size_t f,
                                      std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix x(n, f);
  for (double& v : x.data()) v = rng.uniform();
  return x;
}

inline std::vector<double> uniform_vector(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform();
  return v;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace atp::test

#endif  // ATP_TESTS_SUPPORT_HPP_
