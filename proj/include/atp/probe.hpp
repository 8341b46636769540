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


#ifndef ATP_PROBE_HPP_
#define ATP_PROBE_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

struct ProbeConfig {
  double learning_rate = 0.1;
  int epochs = 300;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
  // Inferred as max label + 1 when unset.
  std::optional<int> num_classes;

  void validate() const;
};

struct SplitSpec {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;

  // Disjoint, in range, labeled, train non-empty.
  void validate(const LabelVector& labels) const;
};

// Three lines, "train:", "val:" and "test:" followed by node ids. The prefixes
// may be omitted, in which case lines are read in that order.
SplitSpec read_split(std::istream& in);
SplitSpec load_split(const std::filesystem::path& path);
void write_split(std::ostream& out, const SplitSpec& split);

// Shuffles the labeled nodes and cuts train/val by the given fractions; the
// rest is test. Each list is sorted.
SplitSpec random_split(const LabelVector& labels, double train_fraction,
                       double val_fraction, std::uint64_t seed);

// Linear softmax model. Row-major (features + 1) x classes; the last row is
// the bias.
struct ProbeModel {
  std::size_t features = 0;
  std::size_t classes = 0;
  std::vector<double> weights;

  double& at(std::size_t row, std::size_t cls) {
    return weights[row * classes + cls];
  }
  double at(std::size_t row, std::size_t cls) const {
    return weights[row * classes + cls];
  }
  std::vector<double> logits(std::span<const double> x) const;
};

std::vector<double> softmax(std::span<const double> logits);

// Mean cross-entropy over `nodes` plus (l2 / 2) ||W||^2.
double probe_loss(const ProbeModel& model, const FeatureMatrix& x,
                  const LabelVector& y, std::span<const NodeId> nodes,
                  double l2);
// Gradient of probe_loss, shaped like model.weights.
std::vector<double> probe_gradient(const ProbeModel& model,
                                   const FeatureMatrix& x,
                                   const LabelVector& y,
                                   std::span<const NodeId> nodes, double l2);

struct TrainingLog {
  std::vector<double> train_loss;
  std::vector<double> val_accuracy;  // empty when the split has no val nodes
};

struct ProbeResult {
  ProbeModel model;
  TrainingLog log;
};

// Full-batch gradient descent. The L2 term is applied as the exact proximal
// step W <- (W - lr * grad_ce) / (1 + lr * l2), which has the same fixed
// point and stays stable for any l2.
ProbeResult train_probe(const FeatureMatrix& x, const LabelVector& y,
                        const SplitSpec& split, const ProbeConfig& cfg);

// Argmax per row, ties to the lower class id.
std::vector<int> predict(const ProbeModel& model, const FeatureMatrix& x);

double evaluate(const ProbeModel& model, const FeatureMatrix& x,
                const LabelVector& y, std::span<const NodeId> nodes);

struct GroupAccuracy {
  std::size_t size = 0;
  std::optional<double> accuracy;  // absent for an empty group
};

struct DegreeGroupReport {
  double threshold = 0.0;
  GroupAccuracy low;   // degree <= threshold
  GroupAccuracy high;  // degree > threshold
};

// Groups `nodes` by weighted degree in g (the uncorrected graph). Unlabeled
// nodes are skipped.
DegreeGroupReport degree_group_report(std::span<const int> predictions,
                                      const LabelVector& y,
                                      const SparseGraph& g, double threshold,
                                      std::span<const NodeId> nodes);

}  // namespace atp

#endif  // ATP_PROBE_HPP_
