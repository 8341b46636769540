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


#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "atp/correction.hpp"
#include "atp/dense.hpp"
#include "atp/error.hpp"
#include "atp/io.hpp"
#include "atp/lnc.hpp"
#include "atp/probe.hpp"
#include "atp/propagation.hpp"
#include "atp/spectral.hpp"
#include "internal.hpp"

namespace atp::cli {
namespace {

std::string graph_bytes(const SparseGraph& g) {
  std::ostringstream o;
  write_edge_list(o, g);
  return o.str();
}

std::string features_bytes(const FeatureMatrix& x, bool csv) {
  std::ostringstream o(std::ios::binary);
  if (csv) write_features_csv(o, x);
  else write_features_atpf(o, x);
  return o.str();
}

std::string labels_bytes(const LabelVector& y) {
  std::string s;
  for (int v : y.values) s += std::to_string(v) + '\n';
  return s;
}

struct LoadedGraph {
  SparseGraph graph;
  std::string name;
  Manifest manifest;
};

// The graph every stage after correction works on.
LoadedGraph working_graph(const Context& ctx, const std::string& consumer) {
  const std::string name = ctx.cfg.correction.skip ? kGraph : kCorrected;
  if (!ctx.cfg.correction.skip && !fs::exists(ctx.out / kCorrected))
    throw DependencyError(consumer + " needs '" +
                          (ctx.out / kCorrected).string() +
                          "'; run the correct stage first or pass "
                          "--skip-correction");
  Manifest m = require_artifact(ctx.out, name, consumer);
  return {load_edge_list(ctx.out / name), name, std::move(m)};
}

std::vector<double> read_kernel_r(const fs::path& path, std::size_t n) {
  std::istringstream in(read_file(path));
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> r;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw ParseError("bad kernel row in '" + path.string() + "'", lineno);
    double v = 0.0;
    const char* first = line.data() + comma + 1;
    const char* last = line.data() + line.size();
    const auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || p != last)
      throw ParseError("bad r_tilde in '" + path.string() + "'", lineno);
    r.push_back(v);
  }
  if (r.size() != n)
    throw DependencyError("kernel has " + std::to_string(r.size()) +
                          " rows but the graph has " + std::to_string(n) +
                          " nodes");
  return r;
}

FeatureMatrix hstack(const std::vector<FeatureMatrix>& parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) cols += p.cols();
  FeatureMatrix out(parts.front().rows(), cols);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    std::size_t c = 0;
    for (const auto& p : parts)
      for (double v : p.row(i)) out(i, c++) = v;
  }
  return out;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_double(*v) : "";
}

}  // namespace

void stage_ingest(Context& ctx) {
  const PipelineConfig& c = ctx.cfg;
  if (c.paths.graph.empty())
    throw ValidationError("no graph given; set paths.graph or pass --graph");

  std::optional<FeatureMatrix> x;
  if (!c.paths.features.empty()) x = load_features(c.paths.features);
  EdgeListOptions opts{c.ingest.n_hint, c.ingest.symmetrize};
  if (!opts.n_hint && x) opts.n_hint = x->rows();
  const SparseGraph g = load_edge_list(c.paths.graph, opts);
  const std::size_t n = g.num_nodes();

  fs::create_directories(ctx.out);
  const std::string params = section_params(c, {"ingest"});
  const std::string gb = graph_bytes(g);
  write_artifact(ctx.out, kGraph, gb, "ingest", c,
                 compute_stage_hash("ingest", params + content_hash(gb), {}),
                 {});

  if (x) {
    if (x->rows() != n)
      throw ValidationError("features have " + std::to_string(x->rows()) +
                            " rows but the graph has " + std::to_string(n) +
                            " nodes");
    const std::string fb = features_bytes(*x, false);
    write_artifact(ctx.out, kFeatures, fb, "ingest", c,
                   compute_stage_hash("ingest", content_hash(fb), {}), {});
  }
  if (!c.paths.labels.empty()) {
    const LabelVector y = load_labels(c.paths.labels);
    if (y.values.size() != n)
      throw ValidationError("labels have " + std::to_string(y.values.size()) +
                            " entries but the graph has " + std::to_string(n) +
                            " nodes");
    const std::string lb = labels_bytes(y);
    write_artifact(ctx.out, kLabels, lb, "ingest", c,
                   compute_stage_hash("ingest", content_hash(lb), {}), {});
  }
  ctx.log << "ingest: n=" << n << " m=" << g.num_edges()
          << (x ? " f=" + std::to_string(x->cols()) : std::string()) << '\n';
}

void stage_correct(Context& ctx) {
  const PipelineConfig& c = ctx.cfg;
  if (c.correction.skip) {
    ctx.log << "correct: skipped\n";
    return;
  }
  const Manifest gm = require_artifact(ctx.out, kGraph, "correct");
  const SparseGraph g = load_edge_list(ctx.out / kGraph);

  const MaskParams p = c.mask_params();
  p.validate();
  MaskPlan plan;
  std::string params = section_params(c, {"pipeline", "correction"});
  if (c.correction.epsilon) {
    const int k = c.correction.epsilon_k.value_or(c.propagation.k);
    params += "correction.k_effective=" + std::to_string(k) + '\n';
    plan = plan_mask(
        g, select_nodes_epsilon(g, *c.correction.epsilon, k,
                                c.correction.lambda2),
        p);
  } else {
    plan = resolve_plan(g, p);
  }
  const CorrectionResult res = apply_mask(g, plan);

  const Inputs inputs{{kGraph, gm.stage_hash}};
  const std::string sh = compute_stage_hash("correct", params, inputs);
  write_artifact(ctx.out, kCorrected, graph_bytes(res.graph), "correct", c, sh,
                 inputs);
  write_artifact(ctx.out, kCorrectionReport, res.report.to_json() + "\n",
                 "correct", c, sh, inputs);
  ctx.log << "correct: selected=" << plan.selected_nodes.size()
          << " masked=" << res.report.edges_masked << '\n';
}

void stage_encode(Context& ctx) {
  const PipelineConfig& c = ctx.cfg;
  const LoadedGraph in = working_graph(ctx, "encode");
  const KernelCoefficients kc = encode(in.graph, c.encoding);

  std::string csv = "node_id,r_dg,r_ev,r_cu,r_tilde\n";
  for (std::size_t i = 0; i < kc.r_tilde.size(); ++i)
    csv += std::to_string(i) + ',' + format_double(kc.r_dg[i]) + ',' +
           format_double(kc.r_ev[i]) + ',' + format_double(kc.r_cu[i]) + ',' +
           format_double(kc.r_tilde[i]) + '\n';

  const Inputs inputs{{in.name, in.manifest.stage_hash}};
  write_artifact(ctx.out, kKernel, csv, "encode", c,
                 compute_stage_hash("encode", section_params(c, {"encoding"}),
                                    inputs),
                 inputs);
  ctx.log << "encode: n=" << kc.r_tilde.size() << '\n';
}

void stage_propagate(Context& ctx) {
  const PipelineConfig& c = ctx.cfg;
  const Manifest fm = require_artifact(ctx.out, kFeatures, "propagate");
  const FeatureMatrix x = load_features(ctx.out / kFeatures);
  const LoadedGraph in = working_graph(ctx, "propagate");
  const std::size_t n = in.graph.num_nodes();

  Inputs inputs{{kFeatures, fm.stage_hash}, {in.name, in.manifest.stage_hash}};
  std::vector<double> r;
  if (c.propagation.fixed_r) {
    r.assign(n, *c.propagation.fixed_r);
  } else {
    const Manifest km = require_artifact(ctx.out, kKernel, "propagate");
    r = read_kernel_r(ctx.out / kKernel, n);
    inputs.emplace_back(kKernel, km.stage_hash);
  }

  PropagationConfig pc;
  pc.k = c.propagation.k;
  pc.scheme = c.propagation.scheme;
  pc.mode = c.propagation.mode;
  std::string params = section_params(c, {"propagation"});
  if (!c.paths.depths.empty()) {
    pc.node_depths = load_node_depths(c.paths.depths);
    params += "depths=" + content_hash(read_file(c.paths.depths)) + '\n';
  }

  const NodeWiseOperator op = build_operator(in.graph, r);
  const PropagatedFeatures out = propagate(op, x, pc);
  const std::string sh = compute_stage_hash("propagate", params, inputs);
  if (out.mode == OutputMode::kSum) {
    write_artifact(ctx.out, propagated_name(c),
                   features_bytes(out.sum, c.propagation.csv), "propagate", c,
                   sh, inputs);
  } else {
    for (std::size_t i = 0; i < out.hops.size(); ++i)
      write_artifact(ctx.out, hop_name(c, static_cast<int>(i)),
                     features_bytes(out.hops[i], c.propagation.csv),
                     "propagate", c, sh, inputs);
  }
  ctx.log << "propagate: k=" << pc.k << " scheme="
          << scheme_name(pc.scheme.kind) << '\n';
}

void stage_analyze(Context& ctx) {
  const PipelineConfig& c = ctx.cfg;
  const LoadedGraph in = working_graph(ctx, "analyze");
  const int k = c.analyze.k.value_or(c.propagation.k);
  if (k < 0) throw ValidationError("analyze k must be >= 0");
  if (c.analyze.dense && in.graph.num_nodes() > dense::kDenseLimit)
    throw CapabilityError("analyze --dense is limited to " +
                          std::to_string(dense::kDenseLimit) +
                          " nodes, graph has " +
                          std::to_string(in.graph.num_nodes()));

  const SparseGraph looped = add_self_loops(in.graph);
  const ConvergenceReport rep =
      c.analyze.dense ? verify_bound(looped, k)
                      : bound_report(looped, k, EigenMethod::kPowerDeflate);

  std::string csv = "node,d_tilde,bound_k,empirical_k\n";
  for (const auto& row : rep.per_node)
    csv += std::to_string(row.node) + ',' + format_double(row.d_tilde) + ',' +
           format_double(row.bound) + ',' + optional_number(row.empirical) +
           '\n';

  std::ostringstream s;
  s << "n = " << rep.n << '\n'
    << "m = " << rep.m << '\n'
    << "k = " << rep.k << '\n'
    << "connected = " << (rep.connected ? "true" : "false") << '\n'
    << "lambda2 = " << format_double(rep.lambda2) << '\n'
    << "gap = " << format_double(rep.spectral_gap) << '\n'
    << "avg_degree = " << format_double(rep.avg_degree) << '\n'
    << "2m+n = " << format_double(rep.volume) << '\n';
  if (rep.lambda2_signed)
    s << "lambda2_signed = " << format_double(*rep.lambda2_signed) << '\n';
  if (rep.lambda_min)
    s << "lambda_min = " << format_double(*rep.lambda_min) << '\n';
  if (rep.worst_slack) {
    s << "checks = " << rep.checks << '\n'
      << "worst_slack = " << format_double(*rep.worst_slack) << '\n'
      << "worst_entry_slack = " << format_double(*rep.worst_entry_slack)
      << '\n';
  }

  std::string params = section_params(c, {"analyze"});
  params += "analyze.k_effective=" + std::to_string(k) + '\n';
  const Inputs inputs{{in.name, in.manifest.stage_hash}};
  const std::string sh = compute_stage_hash("analyze", params, inputs);
  write_artifact(ctx.out, kAnalysis, csv, "analyze", c, sh, inputs);
  write_artifact(ctx.out, kAnalysisSummary, s.str(), "analyze", c, sh, inputs);
  ctx.log << "analyze: lambda2=" << format_double(rep.lambda2) << '\n';
}

void stage_probe(Context& ctx) {
  const PipelineConfig& c = ctx.cfg;
  if (c.paths.split.empty())
    throw ValidationError("no split given; set paths.split or pass --split");

  Inputs inputs;
  std::string params = section_params(c, {"pipeline", "probe"});

  FeatureMatrix x;
  if (!c.paths.probe_features.empty()) {
    x = load_features(c.paths.probe_features);
    params += "features=" +
              content_hash(read_file(c.paths.probe_features)) + '\n';
  } else if (c.propagation.mode == OutputMode::kSum) {
    const std::string name = propagated_name(c);
    inputs.emplace_back(name, require_artifact(ctx.out, name, "probe").stage_hash);
    x = load_features(ctx.out / name);
  } else {
    std::vector<FeatureMatrix> hops;
    for (int i = 0; i <= c.propagation.k; ++i) {
      const std::string name = hop_name(c, i);
      inputs.emplace_back(name,
                          require_artifact(ctx.out, name, "probe").stage_hash);
      hops.push_back(load_features(ctx.out / name));
    }
    x = hstack(hops);
  }

  LabelVector y;
  if (!c.paths.probe_labels.empty()) {
    y = load_labels(c.paths.probe_labels);
    params += "labels=" + content_hash(read_file(c.paths.probe_labels)) + '\n';
  } else {
    inputs.emplace_back(kLabels,
                        require_artifact(ctx.out, kLabels, "probe").stage_hash);
    y = load_labels(ctx.out / kLabels);
  }

  SparseGraph g;
  if (fs::exists(ctx.out / kGraph)) {
    inputs.emplace_back(kGraph,
                        require_artifact(ctx.out, kGraph, "probe").stage_hash);
    g = load_edge_list(ctx.out / kGraph);
  } else if (!c.paths.graph.empty()) {
    g = load_edge_list(c.paths.graph,
                       {c.ingest.n_hint, c.ingest.symmetrize});
    params += "graph=" + content_hash(read_file(c.paths.graph)) + '\n';
  } else {
    throw DependencyError("probe needs a graph for the degree groups; run "
                          "ingest first or pass --graph");
  }

  if (x.rows() != y.values.size() || g.num_nodes() != y.values.size())
    throw ValidationError("probe inputs disagree on node count: features " +
                          std::to_string(x.rows()) + ", labels " +
                          std::to_string(y.values.size()) + ", graph " +
                          std::to_string(g.num_nodes()));

  const SplitSpec split = load_split(c.paths.split);
  params += "split=" + content_hash(read_file(c.paths.split)) + '\n';
  split.validate(y);

  const ProbeResult res = train_probe(x, y, split, c.probe_config());
  const std::vector<int> pred = predict(res.model, x);
  auto acc = [&](const std::vector<NodeId>& nodes) -> std::string {
    return nodes.empty() ? "" : format_double(evaluate(res.model, x, y, nodes));
  };
  const DegreeGroupReport groups =
      degree_group_report(pred, y, g, c.probe.degree_threshold, split.test);

  std::ostringstream s;
  s << "classes = " << res.model.classes << '\n'
    << "features = " << res.model.features << '\n'
    << "train_size = " << split.train.size() << '\n'
    << "val_size = " << split.val.size() << '\n'
    << "test_size = " << split.test.size() << '\n'
    << "final_train_loss = " << format_double(res.log.train_loss.back())
    << '\n'
    << "train_accuracy = " << acc(split.train) << '\n'
    << "val_accuracy = " << acc(split.val) << '\n'
    << "test_accuracy = " << acc(split.test) << '\n'
    << "low_deg_accuracy = " << optional_number(groups.low.accuracy) << '\n'
    << "high_deg_accuracy = " << optional_number(groups.high.accuracy)
    << '\n';

  std::ostringstream gcsv;
  gcsv << "group,threshold,size,accuracy\n"
       << "low," << format_double(groups.threshold) << ',' << groups.low.size
       << ',' << optional_number(groups.low.accuracy) << '\n'
       << "high," << format_double(groups.threshold) << ','
       << groups.high.size << ',' << optional_number(groups.high.accuracy)
       << '\n';

  const std::string sh = compute_stage_hash("probe", params, inputs);
  write_artifact(ctx.out, kProbeSummary, s.str(), "probe", c, sh, inputs);
  write_artifact(ctx.out, kProbeGroups, gcsv.str(), "probe", c, sh, inputs);
  ctx.log << "probe: test_accuracy=" << acc(split.test) << '\n';
}

}  // namespace atp::cli
