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

#include <cmath>
#include <sstream>

#include "atp/error.hpp"
#include "atp/generate.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace atp;

namespace {

struct Fixture {
  FeatureMatrix x;
  LabelVector y;
  std::vector<NodeId> nodes;
};

Fixture five_nodes() {
  Fixture f{FeatureMatrix(5, 3, std::vector<double>{0.2, -1.0, 0.5,   //
                                                    1.3, 0.4, -0.7,   //
                                                    -0.6, 0.9, 0.1,   //
                                                    0.8, -0.3, 1.2,   //
                                                    -1.1, 0.2, -0.4}),
            LabelVector{{0, 1, 0, 1, 1}},
            {0, 1, 2, 3, 4}};
  return f;
}

ProbeModel random_model(std::size_t f, std::size_t c, std::uint64_t seed) {
  ProbeModel m{f, c, std::vector<double>((f + 1) * c)};
  Rng rng(seed);
  for (double& w : m.weights) w = rng.normal();
  return m;
}

Fixture separable(std::size_t n) {
  Fixture f{FeatureMatrix(n, 2), LabelVector{std::vector<int>(n)}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    f.y.values[i] = int(i % 2);
    f.x(i, i % 2) = 1.0;
    f.nodes.push_back(NodeId(i));
  }
  return f;
}

}  // namespace

TEST_SUITE("probe") {

TEST_CASE("softmax rows sum to one") {
  Rng rng(1);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> z(5);
    for (double& v : z) v = 50.0 * rng.normal();
    double s = 0.0;
    for (double p : softmax(z)) s += p;
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }
  const auto big = softmax(std::vector<double>{1000.0, 0.0});
  CHECK(big[0] == 1.0);
}

TEST_CASE("analytic gradient matches central differences") {
  const Fixture f = five_nodes();
  for (double l2 : {0.0, 0.1}) {
    ProbeModel m = random_model(3, 2, 7);
    const auto g = probe_gradient(m, f.x, f.y, f.nodes, l2);
    for (std::size_t i = 0; i < m.weights.size(); ++i) {
      const double h = 1e-5;
      const double w = m.weights[i];
      m.weights[i] = w + h;
      const double up = probe_loss(m, f.x, f.y, f.nodes, l2);
      m.weights[i] = w - h;
      const double down = probe_loss(m, f.x, f.y, f.nodes, l2);
      m.weights[i] = w;
      const double fd = (up - down) / (2 * h);
      CHECK(std::abs(fd - g[i]) <= 1e-4 * std::max(1.0, std::abs(g[i])));
    }
  }
}

TEST_CASE("separable one-hot classes are learned exactly") {
  const Fixture f = separable(20);
  SplitSpec split{f.nodes, {}, {}};
  ProbeConfig cfg;
  cfg.epochs = 100;
  const ProbeResult res = train_probe(f.x, f.y, split, cfg);
  CHECK(evaluate(res.model, f.x, f.y, f.nodes) == 1.0);
  CHECK(res.log.train_loss.size() == 100);
  CHECK(res.log.train_loss.back() < res.log.train_loss.front());
  CHECK(res.log.val_accuracy.empty());
}

TEST_CASE("zero features predict the majority class") {
  FeatureMatrix x(10, 3);
  LabelVector y{{0, 0, 0, 0, 0, 0, 0, 1, 1, 1}};
  std::vector<NodeId> all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  const ProbeResult res = train_probe(x, y, SplitSpec{all, {}, {}}, {});
  CHECK(evaluate(res.model, x, y, all) == doctest::Approx(0.7));
}

TEST_CASE("heavy L2 keeps weights near zero") {
  const Fixture f = separable(20);
  ProbeConfig cfg;
  cfg.l2 = 1e6;
  const ProbeResult res = train_probe(f.x, f.y, SplitSpec{f.nodes, {}, {}}, cfg);
  for (double w : res.model.weights) CHECK(std::abs(w) < 1e-2);
}

TEST_CASE("evaluate fixtures") {
  const Fixture f = separable(4);
  ProbeModel zero{2, 2, std::vector<double>(6, 0.0)};
  CHECK(evaluate(zero, f.x, f.y, f.nodes) == 0.5);
  CHECK(predict(zero, f.x) == std::vector<int>{0, 0, 0, 0});
  ProbeModel perfect{2, 2, {1, 0, 0, 1, 0, 0}};
  CHECK(evaluate(perfect, f.x, f.y, f.nodes) == 1.0);
  CHECK(evaluate(perfect, f.x, f.y, std::vector<NodeId>{3}) == 1.0);
  CHECK_THROWS_AS(evaluate(perfect, f.x, f.y, std::vector<NodeId>{}),
                  ValidationError);
}

TEST_CASE("training is deterministic per seed") {
  const Fixture f = five_nodes();
  ProbeConfig cfg;
  cfg.seed = 11;
  const SplitSpec split{{0, 1, 2}, {3}, {4}};
  const ProbeResult a = train_probe(f.x, f.y, split, cfg);
  const ProbeResult b = train_probe(f.x, f.y, split, cfg);
  CHECK(a.model.weights == b.model.weights);
  CHECK(a.log.val_accuracy.size() == std::size_t(cfg.epochs));
  cfg.seed = 12;
  CHECK(train_probe(f.x, f.y, split, cfg).model.weights != a.model.weights);
}

TEST_CASE("degree groups") {
  const SparseGraph pairs = test::graph_of(4, {{0, 1}, {2, 3}});
  const LabelVector y{{0, 1, 0, 1}};
  const std::vector<int> pred{0, 0, 0, 1};
  const std::vector<NodeId> all{0, 1, 2, 3};
  const auto low = degree_group_report(pred, y, pairs, 3, all);
  CHECK(low.high.size == 0);
  CHECK_FALSE(low.high.accuracy.has_value());
  CHECK(*low.low.accuracy == 0.75);
  const auto high = degree_group_report(pred, y, pairs, 0, all);
  CHECK_FALSE(high.low.accuracy.has_value());
  CHECK(high.high.size == 4);
}

TEST_CASE("degree groups on an SBM against a recount") {
  const std::vector<std::size_t> sizes{50, 50};
  const PlantedPartition pp = stochastic_block_model(sizes, 0.2, 0.02, 3);
  Rng rng(4);
  std::vector<int> pred(100);
  for (int& p : pred) p = int(rng.below(2));
  const LabelVector y{pp.block};
  std::vector<NodeId> nodes;
  for (NodeId i = 0; i < 100; i += 2) nodes.push_back(i);
  const double thr = 10.0;
  const auto rep = degree_group_report(pred, y, pp.graph, thr, nodes);
  const auto d = degrees(pp.graph).values;
  std::size_t lo = 0, lo_ok = 0, hi = 0, hi_ok = 0;
  for (NodeId i : nodes) {
    const bool ok = pred[i] == y.values[i];
    if (d[i] <= thr) {
      ++lo;
      lo_ok += ok;
    } else {
      ++hi;
      hi_ok += ok;
    }
  }
  CHECK(rep.low.size == lo);
  CHECK(rep.high.size == hi);
  if (lo) CHECK(*rep.low.accuracy == double(lo_ok) / double(lo));
  if (hi) CHECK(*rep.high.accuracy == double(hi_ok) / double(hi));
}

TEST_CASE("split files") {
  std::istringstream in("train: 0 1 2\nval: 3\ntest: 4 5\n");
  const SplitSpec s = read_split(in);
  CHECK(s.train == std::vector<NodeId>{0, 1, 2});
  CHECK(s.val == std::vector<NodeId>{3});
  CHECK(s.test == std::vector<NodeId>{4, 5});
  std::ostringstream out;
  write_split(out, s);
  std::istringstream back(out.str());
  const SplitSpec t = read_split(back);
  CHECK(t.train == s.train);
  CHECK(t.test == s.test);

  const LabelVector y{{0, 1, 0, 1, 0, -1}};
  const SplitSpec ok{{0, 1}, {2}, {3, 4}};
  const SplitSpec overlap{{0, 1}, {1}, {}};
  const SplitSpec unlabeled{{0, 5}, {}, {}};
  const SplitSpec outside{{0, 9}, {}, {}};
  const SplitSpec no_train{{}, {1}, {}};
  CHECK_NOTHROW(ok.validate(y));
  CHECK_THROWS_AS(overlap.validate(y), ValidationError);
  CHECK_THROWS_AS(unlabeled.validate(y), ValidationError);
  CHECK_THROWS_AS(outside.validate(y), ValidationError);
  CHECK_THROWS_AS(no_train.validate(y), ValidationError);
}

TEST_CASE("random split") {
  const LabelVector y{{0, 1, 0, 1, 0, 1, 0, 1, 0, -1}};
  const SplitSpec s = random_split(y, 0.4, 0.2, 3);
  CHECK(s.train.size() == 3);
  CHECK(s.val.size() == 1);
  CHECK(s.test.size() == 5);
  CHECK_NOTHROW(s.validate(y));
  const SplitSpec again = random_split(y, 0.4, 0.2, 3);
  CHECK(again.train == s.train);
  CHECK_THROWS_AS(random_split(y, 0.8, 0.5, 3), ValidationError);
}

TEST_CASE("config validation") {
  ProbeConfig cfg;
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.epochs = 0;
  CHECK_NOTHROW(cfg.validate());
  cfg.epochs = -1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

}  // TEST_SUITE
