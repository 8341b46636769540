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


#ifndef ATP_SPECTRAL_HPP_
#define ATP_SPECTRAL_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

// A self-looped graph read as the row-stochastic P = D^-1 A.
class TransitionView {
 public:
  // Keeps a reference; the graph must outlive the view.
  explicit TransitionView(const SparseGraph& looped);
  explicit TransitionView(SparseGraph&&) = delete;

  const SparseGraph& graph() const { return *graph_; }
  const DegreeVector& degrees() const { return degrees_; }
  std::size_t size() const { return graph_->num_nodes(); }
  double entry(NodeId u, NodeId v) const {
    return graph_->weight(u, v) / degrees_.values[u];
  }

 private:
  const SparseGraph* graph_;
  DegreeVector degrees_;
};

// Limit of pi_0 P^k for uniform pi_0: within each component B_g it is
// (n_g / n) * d_i / vol(B_g), i.e. the degree-proportional fixed point of P
// carrying the component's share of the starting mass.
std::vector<double> stationary_distribution(const TransitionView& p);

enum class EigenMethod { kDense, kPowerDeflate };

struct PowerOptions {
  double tol = 1e-10;
  std::size_t max_iter = 200000;
};

struct SecondEigenvalue {
  // max(|lambda_2|, |lambda_n|) for a connected graph, 1 when disconnected.
  double modulus = 0.0;
  bool connected = true;
  // Decay rate of each component (0 for a single-node component).
  std::vector<double> per_component;
  // Signed extremes of the first component, available from the dense method.
  std::optional<double> lambda2;
  std::optional<double> lambda_min;
};

// Works on the symmetric similar matrix D^-1/2 A D^-1/2.
SecondEigenvalue second_eigenvalue(const TransitionView& p, EigenMethod method,
                                   const PowerOptions& opts = {});

// sqrt(vol / d_i) * lambda2^k, vol = sum of looped degrees (2m + n for
// unweighted graphs with unit loops).
double convergence_bound(const SparseGraph& looped, NodeId node, int k,
                         double lambda2);

struct NodeConvergence {
  NodeId node;
  double d_tilde;
  double bound;
  std::optional<double> empirical;
};

struct ConvergenceReport {
  std::size_t n = 0;
  std::size_t m = 0;       // undirected non-loop edges
  double volume = 0.0;     // sum of looped degrees
  double lambda2 = 0.0;    // decay rate used by the bound
  double spectral_gap = 0.0;
  double avg_degree = 0.0; // 2m / n over non-loop weight
  bool connected = true;
  int k = 0;
  std::optional<double> lambda2_signed;
  std::optional<double> lambda_min;
  // Checked cases and the smallest bound - empirical margin (verify_bound).
  std::size_t checks = 0;
  std::optional<double> worst_slack;
  std::optional<double> worst_entry_slack;
  std::vector<NodeConvergence> per_node;
};

// Per-node bound at hop k using each node's component quantities (equal to
// convergence_bound on connected graphs). No empirical values.
ConvergenceReport bound_report(const SparseGraph& looped, int k,
                               EigenMethod method, const PowerOptions& opts = {});

// Dense check over every node i and hop 0..k_max of
//   ||pi - e_i P^k||_2 <= sqrt(vol / d_i) lambda2^k       (whole vector)
//   |(e_i P^k)_j - pi_j| <= sqrt(d_j / d_i) lambda2^k     (every entry)
// with pi the walk's limit inside i's component. Throws BoundViolation on the
// first failure; the report carries hop-k_max values per node.
ConvergenceReport verify_bound(const SparseGraph& looped, int k_max);

struct SpectralGap {
  double gap = 0.0;
  double avg_degree = 0.0;
};

// Adds unit self-loops when g has none. Reported only, nothing asserted.
SpectralGap spectral_gap_report(const SparseGraph& g,
                                EigenMethod method = EigenMethod::kDense);

}  // namespace atp

#endif  // ATP_SPECTRAL_HPP_
