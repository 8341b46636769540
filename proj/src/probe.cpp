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


#include "atp/probe.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "atp/error.hpp"
#include "atp/rng.hpp"

namespace atp {
namespace {

int infer_classes(const LabelVector& y, const ProbeConfig& cfg) {
  int max_label = -1;
  for (int v : y.values) max_label = std::max(max_label, v);
  if (cfg.num_classes) {
    if (max_label >= *cfg.num_classes)
      throw ValidationError("label " + std::to_string(max_label) +
                            " exceeds class count " +
                            std::to_string(*cfg.num_classes));
    return *cfg.num_classes;
  }
  return max_label + 1;
}

}  // namespace

void ProbeConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ValidationError("learning rate must be > 0");
  if (epochs < 0) throw ValidationError("epochs must be >= 0");
  if (!(l2 >= 0.0)) throw ValidationError("l2 must be >= 0");
  if (num_classes && *num_classes < 1)
    throw ValidationError("class count must be >= 1");
}

void SplitSpec::validate(const LabelVector& labels) const {
  if (train.empty()) throw ValidationError("train split is empty");
  std::vector<char> seen(labels.values.size(), 0);
  for (const auto* part : {&train, &val, &test}) {
    for (NodeId u : *part) {
      if (u >= labels.values.size())
        throw ValidationError("split node " + std::to_string(u) +
                              " out of range");
      if (seen[u]) throw ValidationError("split sets overlap at node " +
                                         std::to_string(u));
      seen[u] = 1;
      if (labels.values[u] == kUnlabeled)
        throw ValidationError("split node " + std::to_string(u) +
                              " is unlabeled");
    }
  }
}

SplitSpec read_split(std::istream& in) {
  SplitSpec s;
  std::vector<NodeId>* parts[] = {&s.train, &s.val, &s.test};
  std::string line;
  std::size_t lineno = 0, next = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || text[first] == '#') continue;
    text.remove_prefix(first);

    std::vector<NodeId>* target = nullptr;
    if (const auto colon = text.find(':'); colon != std::string_view::npos) {
      const auto name = text.substr(0, colon);
      if (name == "train") target = &s.train;
      else if (name == "val") target = &s.val;
      else if (name == "test") target = &s.test;
      else throw ParseError("unknown split '" + std::string(name) + "'", lineno);
      text.remove_prefix(colon + 1);
    } else {
      if (next >= 3) throw ParseError("more than three split lines", lineno);
      target = parts[next];
    }
    ++next;

    std::istringstream ids{std::string(text)};
    std::string tok;
    while (ids >> tok) {
      long long v;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size() || v < 0)
        throw ParseError("bad node id '" + tok + "'", lineno);
      target->push_back(static_cast<NodeId>(v));
    }
  }
  return s;
}

SplitSpec random_split(const LabelVector& labels, double train_fraction,
                       double val_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0) || !(val_fraction >= 0.0) ||
      train_fraction + val_fraction > 1.0)
    throw ValidationError("split fractions must satisfy train > 0, val >= 0, "
                          "train + val <= 1");
  std::vector<NodeId> labeled;
  for (std::size_t i = 0; i < labels.values.size(); ++i)
    if (labels.values[i] != kUnlabeled) labeled.push_back(NodeId(i));
  Rng rng(seed);
  const auto order = rng.sample_without_replacement(labeled.size(),
                                                    labeled.size());
  const auto n_train = static_cast<std::size_t>(
      std::floor(train_fraction * labeled.size() + 1e-9));
  const auto n_val = static_cast<std::size_t>(
      std::floor(val_fraction * labeled.size() + 1e-9));
  SplitSpec s;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const NodeId v = labeled[order[i]];
    if (i < n_train) s.train.push_back(v);
    else if (i < n_train + n_val) s.val.push_back(v);
    else s.test.push_back(v);
  }
  std::ranges::sort(s.train);
  std::ranges::sort(s.val);
  std::ranges::sort(s.test);
  return s;
}

SplitSpec load_split(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_split(in);
}

void write_split(std::ostream& out, const SplitSpec& split) {
  const std::pair<const char*, const std::vector<NodeId>*> parts[] = {
      {"train", &split.train}, {"val", &split.val}, {"test", &split.test}};
  for (const auto& [name, ids] : parts) {
    out << name << ':';
    for (NodeId u : *ids) out << ' ' << u;
    out << '\n';
  }
}

std::vector<double> ProbeModel::logits(std::span<const double> x) const {
  std::vector<double> z(classes, 0.0);
  for (std::size_t c = 0; c < classes; ++c) {
    double s = at(features, c);
    for (std::size_t f = 0; f < features; ++f) s += x[f] * at(f, c);
    z[c] = s;
  }
  return z;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double mx = *std::max_element(p.begin(), p.end());
  double s = 0.0;
  for (double& v : p) {
    v = std::exp(v - mx);
    s += v;
  }
  for (double& v : p) v /= s;
  return p;
}

double probe_loss(const ProbeModel& model, const FeatureMatrix& x,
                  const LabelVector& y, std::span<const NodeId> nodes,
                  double l2) {
  double ce = 0.0;
  for (NodeId u : nodes) {
    const auto z = model.logits(x.row(u));
    const double mx = *std::max_element(z.begin(), z.end());
    double s = 0.0;
    for (double v : z) s += std::exp(v - mx);
    ce += (mx + std::log(s)) - z[y.values[u]];
  }
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  return ce / double(nodes.size()) + 0.5 * l2 * reg;
}

std::vector<double> probe_gradient(const ProbeModel& model,
                                   const FeatureMatrix& x,
                                   const LabelVector& y,
                                   std::span<const NodeId> nodes, double l2) {
  const std::size_t c_count = model.classes;
  std::vector<double> grad(model.weights.size(), 0.0);
  const double inv = 1.0 / double(nodes.size());
  for (NodeId u : nodes) {
    const auto row = x.row(u);
    auto p = softmax(model.logits(row));
    p[y.values[u]] -= 1.0;
    for (std::size_t f = 0; f <= model.features; ++f) {
      const double xf = f < model.features ? row[f] : 1.0;
      for (std::size_t c = 0; c < c_count; ++c)
        grad[f * c_count + c] += inv * xf * p[c];
    }
  }
  for (std::size_t i = 0; i < grad.size(); ++i)
    grad[i] += l2 * model.weights[i];
  return grad;
}

ProbeResult train_probe(const FeatureMatrix& x, const LabelVector& y,
                        const SplitSpec& split, const ProbeConfig& cfg) {
  cfg.validate();
  if (y.values.size() != x.rows())
    throw ValidationError("label count does not match feature rows");
  split.validate(y);
  const int classes = infer_classes(y, cfg);

  ProbeResult result;
  ProbeModel& model = result.model;
  model.features = x.cols();
  model.classes = static_cast<std::size_t>(classes);
  model.weights.resize((model.features + 1) * model.classes);
  Rng rng(cfg.seed);
  for (double& w : model.weights) w = 0.02 * (rng.uniform() - 0.5);

  const double shrink = 1.0 / (1.0 + cfg.learning_rate * cfg.l2);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    // Cross-entropy part only; the L2 part is folded into `shrink`.
    const auto grad = probe_gradient(model, x, y, split.train, 0.0);
    for (std::size_t i = 0; i < grad.size(); ++i)
      model.weights[i] =
          (model.weights[i] - cfg.learning_rate * grad[i]) * shrink;
    result.log.train_loss.push_back(
        probe_loss(model, x, y, split.train, cfg.l2));
    if (!split.val.empty())
      result.log.val_accuracy.push_back(evaluate(model, x, y, split.val));
  }
  return result;
}

std::vector<int> predict(const ProbeModel& model, const FeatureMatrix& x) {
  std::vector<int> out(x.rows(), 0);
  for (std::size_t u = 0; u < x.rows(); ++u) {
    const auto z = model.logits(x.row(u));
    // max_element returns the first maximum, i.e. the lower class id.
    out[u] = static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());
  }
  return out;
}

double evaluate(const ProbeModel& model, const FeatureMatrix& x,
                const LabelVector& y, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw ValidationError("evaluate needs a non-empty set");
  std::size_t hit = 0;
  for (NodeId u : nodes) {
    const auto z = model.logits(x.row(u));
    const auto pred = std::max_element(z.begin(), z.end()) - z.begin();
    if (pred == y.values[u]) ++hit;
  }
  return double(hit) / double(nodes.size());
}

DegreeGroupReport degree_group_report(std::span<const int> predictions,
                                      const LabelVector& y,
                                      const SparseGraph& g, double threshold,
                                      std::span<const NodeId> nodes) {
  if (!(threshold >= 0.0)) throw ValidationError("threshold must be >= 0");
  if (predictions.size() != g.num_nodes() ||
      y.values.size() != g.num_nodes())
    throw ValidationError("predictions and labels must cover every node");
  const DegreeVector d = degrees(g);
  std::size_t low_hit = 0, high_hit = 0;
  DegreeGroupReport r;
  r.threshold = threshold;
  for (NodeId u : nodes) {
    if (u >= g.num_nodes())
      throw ValidationError("node " + std::to_string(u) + " out of range");
    if (y.values[u] == kUnlabeled) continue;
    const bool correct = predictions[u] == y.values[u];
    if (d.values[u] <= threshold) {
      ++r.low.size;
      low_hit += correct;
    } else {
      ++r.high.size;
      high_hit += correct;
    }
  }
  if (r.low.size) r.low.accuracy = double(low_hit) / double(r.low.size);
  if (r.high.size) r.high.accuracy = double(high_hit) / double(r.high.size);
  return r;
}

}  // namespace atp
