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


#include "atp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "atp/dense.hpp"
#include "atp/error.hpp"
#include "atp/rng.hpp"

namespace atp {
namespace {

// Floating-point allowance when comparing an empirical distance against an
// analytic bound that may be exactly zero.
constexpr double kBoundSlack = 1e-12;

double non_loop_weight(const SparseGraph& g) {
  double s = 0.0;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
      if (g.col(e) != u) s += g.edge_weight(e);
  return s;
}

std::size_t positive_edges(const SparseGraph& g) {
  std::size_t m = 0;
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
      if (g.col(e) > u && g.edge_weight(e) > 0.0) ++m;
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void deflate(std::vector<double>& x, const std::vector<double>& v1) {
  const double c = dot(x, v1);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * v1[i];
}

// y = D^-1/2 A D^-1/2 x, summed in CSR order.
void normalized_apply(const SparseGraph& g, const std::vector<double>& inv_sq,
                      const std::vector<double>& x, std::vector<double>& y) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    double s = 0.0;
    for (EdgeIndex e = g.row_begin(u); e < g.row_end(u); ++e)
      s += g.edge_weight(e) * inv_sq[g.col(e)] * x[g.col(e)];
    y[u] = inv_sq[u] * s;
  }
}

// Largest modulus below the Perron root, via the Rayleigh quotient of S^2 on
// the complement of sqrt(d).
double power_deflate(const SparseGraph& g, const PowerOptions& opts) {
  const std::size_t n = g.num_nodes();
  const DegreeVector d = degrees(g);
  std::vector<double> inv_sq(n), v1(n);
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    v1[i] = std::sqrt(d.values[i]);
    inv_sq[i] = 1.0 / v1[i];
    norm += d.values[i];
  }
  norm = std::sqrt(norm);
  for (double& v : v1) v /= norm;

  Rng rng(0x5eed5eedULL);
  std::vector<double> x(n), y(n), z(n);
  for (double& v : x) v = rng.normal();
  deflate(x, v1);
  double xn = std::sqrt(dot(x, x));
  if (xn == 0.0) return 0.0;
  for (double& v : x) v /= xn;

  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    normalized_apply(g, inv_sq, x, y);
    deflate(y, v1);
    normalized_apply(g, inv_sq, y, z);
    deflate(z, v1);
    const double rho = dot(x, z);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      residual += (z[i] - rho * x[i]) * (z[i] - rho * x[i]);
    residual = std::sqrt(residual);
    if (residual < opts.tol) return std::sqrt(std::max(rho, 0.0));
    const double zn = std::sqrt(dot(z, z));
    if (zn == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) x[i] = z[i] / zn;
  }
  throw ConvergenceError("deflated power iteration did not converge",
                         residual);
}

struct DenseSpectrum {
  double modulus = 0.0;
  double lambda2 = 0.0;
  double lambda_min = 0.0;
};

DenseSpectrum dense_spectrum(const SparseGraph& component) {
  DenseSpectrum out;
  if (component.num_nodes() < 2) {
    out.lambda_min = 1.0;
    return out;
  }
  const auto eig =
      dense::dense_eig_symmetric(dense::symmetric_normalized(component));
  out.lambda2 = eig.values[1];
  out.lambda_min = eig.values.back();
  out.modulus = std::max(std::abs(out.lambda2), std::abs(out.lambda_min));
  return out;
}

}  // namespace

TransitionView::TransitionView(const SparseGraph& looped)
    : graph_(&looped), degrees_(atp::degrees(looped)) {
  if (!looped.has_self_loops())
    throw InvalidStateError("transition view needs a self-looped graph");
  for (std::size_t u = 0; u < degrees_.values.size(); ++u)
    if (!(degrees_.values[u] > 0.0))
      throw NumericError("node " + std::to_string(u) + " has zero degree");
}

std::vector<double> stationary_distribution(const TransitionView& p) {
  const std::size_t n = p.size();
  const Components comps = connected_components(p.graph());
  std::vector<double> volume(comps.count, 0.0);
  std::vector<std::size_t> members(comps.count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    volume[comps.id[i]] += p.degrees().values[i];
    ++members[comps.id[i]];
  }
  std::vector<double> pi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto g = comps.id[i];
    pi[i] = (double(members[g]) / double(n)) * p.degrees().values[i] /
            volume[g];
  }
  return pi;
}

SecondEigenvalue second_eigenvalue(const TransitionView& p, EigenMethod method,
                                   const PowerOptions& opts) {
  const Components comps = connected_components(p.graph());
  SecondEigenvalue out;
  out.connected = comps.count <= 1;
  double lambda_min = 1.0;
  std::optional<double> first_lambda2;
  for (const auto& nodes : comps.members()) {
    const SparseGraph sub = induced_subgraph(p.graph(), nodes);
    if (method == EigenMethod::kDense) {
      const DenseSpectrum s = dense_spectrum(sub);
      out.per_component.push_back(s.modulus);
      lambda_min = std::min(lambda_min, s.lambda_min);
      if (!first_lambda2) first_lambda2 = s.lambda2;
    } else {
      out.per_component.push_back(sub.num_nodes() < 2
                                      ? 0.0
                                      : power_deflate(sub, opts));
    }
  }
  out.modulus = out.connected
                    ? (out.per_component.empty() ? 0.0 : out.per_component[0])
                    : 1.0;
  if (method == EigenMethod::kDense) {
    out.lambda2 = out.connected ? first_lambda2.value_or(0.0) : 1.0;
    out.lambda_min = lambda_min;
  }
  return out;
}

double convergence_bound(const SparseGraph& looped, NodeId node, int k,
                         double lambda2) {
  if (!looped.has_self_loops())
    throw InvalidStateError("convergence_bound needs a self-looped graph");
  if (!(lambda2 >= 0.0 && lambda2 <= 1.0))
    throw ValidationError("lambda2 must lie in [0, 1]");
  if (k < 0) throw ValidationError("k must be >= 0");
  const DegreeVector d = degrees(looped);
  double volume = 0.0;
  for (double v : d.values) volume += v;
  return std::sqrt(volume / d.values.at(node)) * std::pow(lambda2, k);
}

ConvergenceReport bound_report(const SparseGraph& looped, int k,
                               EigenMethod method, const PowerOptions& opts) {
  const TransitionView p(looped);
  const SecondEigenvalue lam = second_eigenvalue(p, method, opts);
  const Components comps = connected_components(looped);

  ConvergenceReport r;
  r.n = looped.num_nodes();
  r.m = positive_edges(looped);
  r.k = k;
  r.connected = lam.connected;
  r.lambda2 = lam.modulus;
  r.spectral_gap = 1.0 - lam.modulus;
  r.lambda2_signed = lam.lambda2;
  r.lambda_min = lam.lambda_min;
  r.avg_degree = r.n ? non_loop_weight(looped) / double(r.n) : 0.0;

  std::vector<double> volume(comps.count, 0.0);
  for (std::size_t i = 0; i < r.n; ++i) {
    volume[comps.id[i]] += p.degrees().values[i];
    r.volume += p.degrees().values[i];
  }
  for (NodeId i = 0; i < r.n; ++i) {
    const auto g = comps.id[i];
    const double d = p.degrees().values[i];
    r.per_node.push_back(
        {i, d,
         std::sqrt(volume[g] / d) * std::pow(lam.per_component[g], k),
         std::nullopt});
  }
  return r;
}

ConvergenceReport verify_bound(const SparseGraph& looped, int k_max) {
  if (looped.num_nodes() > dense::kDenseLimit)
    throw CapabilityError("verify_bound is limited to " +
                          std::to_string(dense::kDenseLimit) + " nodes");
  if (k_max < 0) throw ValidationError("k_max must be >= 0");

  ConvergenceReport r = bound_report(looped, k_max, EigenMethod::kDense);
  const Components comps = connected_components(looped);
  double worst = std::numeric_limits<double>::infinity();
  double worst_entry = std::numeric_limits<double>::infinity();

  for (const auto& nodes : comps.members()) {
    const SparseGraph sub = induced_subgraph(looped, nodes);
    const std::size_t ng = nodes.size();
    const double lam = dense_spectrum(sub).modulus;
    const DegreeVector d = degrees(sub);
    double vol = 0.0;
    for (double v : d.values) vol += v;
    std::vector<double> pi(ng);
    for (std::size_t j = 0; j < ng; ++j) pi[j] = d.values[j] / vol;

    const dense::DenseMatrix step = dense::transition(sub);
    dense::DenseMatrix power = dense::DenseMatrix::identity(ng);
    for (int k = 0; k <= k_max; ++k) {
      if (k > 0) power = dense::multiply(power, step);
      const double decay = std::pow(lam, k);
      for (std::size_t i = 0; i < ng; ++i) {
        double sq = 0.0;
        for (std::size_t j = 0; j < ng; ++j) {
          const double diff = power(i, j) - pi[j];
          sq += diff * diff;
          const double entry_bound =
              std::sqrt(d.values[j] / d.values[i]) * decay;
          const double entry_slack = entry_bound - std::abs(diff);
          worst_entry = std::min(worst_entry, entry_slack);
          if (entry_slack < -kBoundSlack)
            throw BoundViolation(
                "per-entry bound violated at node " +
                    std::to_string(nodes[i]) + ", target " +
                    std::to_string(nodes[j]) + ", hop " + std::to_string(k),
                nodes[i], k);
        }
        const double empirical = std::sqrt(sq);
        const double bound = std::sqrt(vol / d.values[i]) * decay;
        worst = std::min(worst, bound - empirical);
        ++r.checks;
        if (bound - empirical < -kBoundSlack)
          throw BoundViolation("convergence bound violated at node " +
                                   std::to_string(nodes[i]) + ", hop " +
                                   std::to_string(k),
                               nodes[i], k);
        if (k == k_max) r.per_node[nodes[i]].empirical = empirical;
      }
    }
  }
  r.worst_slack = worst;
  r.worst_entry_slack = worst_entry;
  return r;
}

SpectralGap spectral_gap_report(const SparseGraph& g, EigenMethod method) {
  const SparseGraph looped = g.has_self_loops() ? g : add_self_loops(g);
  const TransitionView p(looped);
  SpectralGap out;
  out.gap = 1.0 - second_eigenvalue(p, method).modulus;
  out.avg_degree = g.num_nodes() ? non_loop_weight(looped) / g.num_nodes() : 0;
  return out;
}

}  // namespace atp
