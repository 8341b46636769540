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


#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "atp/error.hpp"
#include "atp/generate.hpp"
#include "atp/io.hpp"
#include "atp/probe.hpp"
#include "atp/rng.hpp"
#include "internal.hpp"

namespace atp::cli {

std::vector<Step> pipeline_steps(const PipelineConfig& cfg) {
  std::vector<Step> steps{{"ingest", stage_ingest}, {"correct", stage_correct}};
  if (!cfg.propagation.fixed_r) steps.push_back({"encode", stage_encode});
  steps.push_back({"propagate", stage_propagate});
  if (cfg.analyze.enabled) steps.push_back({"analyze", stage_analyze});
  const bool have_labels =
      !cfg.paths.labels.empty() || !cfg.paths.probe_labels.empty();
  if (!cfg.paths.split.empty() && have_labels)
    steps.push_back({"probe", stage_probe});
  return steps;
}

namespace {

struct Setting {
  std::string section;
  std::string key;
  std::string value;
};

// Collects command-line overrides as config settings so that flags go through
// the same parser and validation as the config file.
class Overrides {
 public:
  void option(CLI::App* app, const std::string& flag, const char* section,
              const char* key, const std::string& help) {
    app->add_option_function<std::string>(
        flag,
        [this, section, key](const std::string& v) {
          items_.push_back({section, key, v});
        },
        help);
  }
  void flag(CLI::App* app, const std::string& flag, const char* section,
            const char* key, const char* value, const std::string& help) {
    app->add_flag_callback(
        flag,
        [this, section, key, value] { items_.push_back({section, key, value}); },
        help);
  }
  void apply(PipelineConfig& cfg) const {
    for (const auto& s : items_) {
      if (s.value.find_first_of("\r\n") != std::string::npos)
        throw ValidationError("value for --" + s.key + " contains a newline");
      apply_config_text(cfg, "[" + s.section + "]\n" + s.key + " = " +
                                 s.value + "\n");
    }
  }

 private:
  std::vector<Setting> items_;
};

void add_common(CLI::App* app, Overrides& ov, std::string& config_path) {
  app->add_option("--config", config_path, "Config file (key = value)");
  ov.option(app, "--out", "paths", "out", "Output directory");
  ov.option(app, "--seed", "pipeline", "seed", "Root seed");
  ov.flag(app, "--skip-correction", "correction", "skip", "true",
          "Use the ingested graph without masking");
}

void add_ingest(CLI::App* app, Overrides& ov) {
  ov.option(app, "--graph", "paths", "graph", "Edge list");
  ov.option(app, "--features", "paths", "features", "Features (ATPF or CSV)");
  ov.option(app, "--labels", "paths", "labels", "Labels, one per line");
  ov.option(app, "--n-hint", "ingest", "n_hint", "Minimum node count");
  ov.flag(app, "--symmetrize", "ingest", "symmetrize", "true",
          "Accept asymmetric weights, keeping the larger");
}

void add_correct(CLI::App* app, Overrides& ov, const std::string& k_flag) {
  ov.option(app, "--theta", "correction", "theta", "Top-degree fraction");
  ov.option(app, "--sparse-sample-ratio", "correction", "sparse_sample_ratio",
            "Sampled fraction of the remaining nodes");
  ov.option(app, "--mask-fraction", "correction", "mask_fraction",
            "Fraction of each selected node's edges to mask");
  ov.option(app, "--mask-token", "correction", "mask_token",
            "Weight multiplier of masked edges");
  ov.option(app, "--epsilon", "correction", "epsilon",
            "Select nodes whose bound at k hops is <= epsilon");
  ov.option(app, k_flag, "correction", "k", "Hop count for --epsilon");
  ov.option(app, "--lambda2", "correction", "lambda2",
            "Second eigenvalue override for --epsilon");
}

void add_encode(CLI::App* app, Overrides& ov) {
  ov.option(app, "--c-norm", "encoding", "c_norm", "Coefficient scale");
  ov.flag(app, "--no-eigen", "encoding", "use_eigen", "false",
          "Drop the eigenvector term");
  ov.option(app, "--power-tol", "encoding", "power_tol",
            "Power iteration tolerance");
  ov.option(app, "--power-max", "encoding", "power_max",
            "Power iteration cap");
  ov.option(app, "--k-order", "encoding", "k_order", "Degree moment order");
  ov.option(app, "--cluster-variant", "encoding", "cluster_variant",
            "literal or standard");
}

void add_propagate(CLI::App* app, Overrides& ov) {
  ov.option(app, "--k", "propagation", "k", "Propagation steps");
  ov.option(app, "--scheme", "propagation", "scheme",
            "sgc, s2gc, gbp, heat, concat or custom");
  ov.option(app, "--beta", "propagation", "beta", "gbp decay");
  ov.option(app, "--omega", "propagation", "omega", "heat base");
  ov.option(app, "--rho", "propagation", "rho", "heat factorial exponent");
  ov.option(app, "--weights", "propagation", "weights",
            "Comma-separated custom hop weights");
  ov.option(app, "--mode", "propagation", "mode", "sum or concat");
  ov.option(app, "--depths", "paths", "depths", "Per-node depth file");
  ov.option(app, "--fixed-r", "propagation", "fixed_r",
            "Use one kernel coefficient for all nodes and skip encoding");
  ov.option(app, "--format", "propagation", "format", "atpf or csv");
}

void add_probe(CLI::App* app, Overrides& ov, bool inputs) {
  if (inputs) {
    ov.option(app, "--features", "paths", "probe_features",
              "Feature file (default: propagated output)");
    ov.option(app, "--labels", "paths", "probe_labels",
              "Label file (default: ingested labels)");
    ov.option(app, "--graph", "paths", "graph",
              "Graph for degree groups when nothing was ingested");
  }
  ov.option(app, "--split", "paths", "split", "Split file");
  ov.option(app, "--lr", "probe", "lr", "Learning rate");
  ov.option(app, "--epochs", "probe", "epochs", "Full-batch epochs");
  ov.option(app, "--l2", "probe", "l2", "L2 penalty");
  ov.option(app, "--degree-threshold", "probe", "degree_threshold",
            "Degree separating Low-Deg from High-Deg");
}

struct GenerateArgs {
  std::string kind = "erdos_renyi";
  std::size_t n = 0;
  double p = 0.1;
  std::vector<std::size_t> blocks;
  double p_in = 0.1;
  double p_out = 0.01;
  std::uint64_t seed = 0;
  std::string output;
  std::string features_out;
  std::string feature_kind = "gaussian";
  std::size_t dim = 8;
  double noise = 0.0;
  std::string labels_out;
  std::string split_out;
  double train = 0.2;
  double val = 0.2;
};

void add_generate(CLI::App* app, GenerateArgs& a) {
  app->add_option("--kind", a.kind,
                  "path, cycle, star, complete, erdos_renyi or sbm");
  app->add_option("--n", a.n, "Nodes (leaves for star)");
  app->add_option("--p", a.p, "Edge probability for erdos_renyi");
  app->add_option("--blocks", a.blocks, "Block sizes for sbm")->delimiter(',');
  app->add_option("--p-in", a.p_in, "Within-block probability");
  app->add_option("--p-out", a.p_out, "Between-block probability");
  app->add_option("--seed", a.seed, "Seed");
  app->add_option("--output", a.output, "Edge list to write")->required();
  app->add_option("--features-out", a.features_out, "Feature file to write");
  app->add_option("--feature-kind", a.feature_kind, "gaussian or indicator");
  app->add_option("--dim", a.dim, "Gaussian feature dimension");
  app->add_option("--noise", a.noise, "Indicator noise fraction");
  app->add_option("--labels-out", a.labels_out, "Block labels (sbm only)");
  app->add_option("--split-out", a.split_out, "Random split (sbm only)");
  app->add_option("--train", a.train, "Train fraction");
  app->add_option("--val", a.val, "Validation fraction");
}

void run_generate(const GenerateArgs& a, std::ostream& log) {
  const GraphKind kind = parse_graph_kind(a.kind);
  SparseGraph g;
  std::vector<int> labels;
  if (kind == GraphKind::kSbm) {
    PlantedPartition pp = stochastic_block_model(
        a.blocks, a.p_in, a.p_out, sub_seed(a.seed, "graph"));
    g = std::move(pp.graph);
    labels = std::move(pp.block);
  } else {
    GenerateParams params;
    params.n = a.n;
    params.p = a.p;
    g = generate(kind, params, sub_seed(a.seed, "graph"));
  }
  save_edge_list(a.output, g);

  const bool needs_labels = !a.labels_out.empty() || !a.split_out.empty() ||
                            a.feature_kind == "indicator";
  if (needs_labels && labels.empty())
    throw ValidationError("labels, splits and indicator features need "
                          "--kind sbm");
  if (!a.features_out.empty()) {
    FeatureMatrix x;
    if (a.feature_kind == "gaussian")
      x = gaussian_features(g.num_nodes(), a.dim, sub_seed(a.seed, "features"));
    else if (a.feature_kind == "indicator")
      x = class_indicator_features(labels, a.blocks.size(), a.noise,
                                   sub_seed(a.seed, "features"));
    else
      throw ValidationError("unknown feature kind '" + a.feature_kind + "'");
    save_features(a.features_out, x, a.features_out.ends_with(".csv"));
  }
  if (!a.labels_out.empty()) save_labels(a.labels_out, LabelVector{labels});
  if (!a.split_out.empty()) {
    std::ostringstream o;
    write_split(o, random_split(LabelVector{labels}, a.train, a.val,
                                sub_seed(a.seed, "split")));
    write_file(a.split_out, o.str());
  }
  log << "generate: n=" << g.num_nodes() << " m=" << g.num_edges() << '\n';
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const CapabilityError*>(&e)) return kRefused;
  if (dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const IoError*>(&e) ||
      dynamic_cast<const DependencyError*>(&e) ||
      dynamic_cast<const InvalidStateError*>(&e))
    return kBadInput;
  return kInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Adaptive topology-aware propagation for scalable GNNs", "atp"};
  app.set_version_flag("--version", std::string("atp ") + kVersion);
  app.require_subcommand(1);

  Overrides ov;
  std::string config_path;
  GenerateArgs gen;

  using StageFn = void (*)(Context&);
  struct Sub {
    CLI::App* app;
    const char* stage;
    StageFn fn;
  };
  std::vector<Sub> subs;
  auto sub = [&](const char* name, const char* help, StageFn fn) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, ov, config_path);
    subs.push_back({s, name, fn});
    return s;
  };

  add_ingest(sub("ingest", "Load inputs into the output directory",
                 stage_ingest),
             ov);
  add_correct(sub("correct", "Mask edges of high-bias nodes", stage_correct),
              ov, "--k");
  add_encode(sub("encode", "Compute kernel coefficients", stage_encode), ov);
  {
    CLI::App* s = sub("propagate", "Propagate features", stage_propagate);
    add_propagate(s, ov);
  }
  {
    CLI::App* s = sub("analyze", "Spectral convergence report", stage_analyze);
    ov.flag(s, "--dense", "analyze", "dense", "true",
            "Exact eigensolver plus empirical distances");
    ov.option(s, "--k", "analyze", "k", "Hop count (default: propagation k)");
  }
  add_probe(sub("probe", "Train the linear probe", stage_probe), ov, true);
  {
    CLI::App* s = sub("pipeline", "Run every stage", nullptr);
    add_ingest(s, ov);
    add_correct(s, ov, "--epsilon-k");
    add_encode(s, ov);
    add_propagate(s, ov);
    ov.flag(s, "--analyze", "analyze", "enabled", "true",
            "Include the analyze stage");
    ov.flag(s, "--dense", "analyze", "dense", "true",
            "Dense analysis (implies nothing unless --analyze)");
    add_probe(s, ov, false);
  }
  CLI::App* gen_app =
      app.add_subcommand("generate", "Write a synthetic graph and inputs");
  add_generate(gen_app, gen);

  std::vector<std::string> argv_store{"atp"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kBadInput;
  }

  std::string stage = "generate";
  try {
    if (gen_app->parsed()) {
      run_generate(gen, out);
      return kOk;
    }
    PipelineConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    ov.apply(cfg);
    for (const Sub& s : subs) {
      if (!s.app->parsed()) continue;
      stage = s.stage;
      Context ctx{cfg, cfg.paths.out, out};
      if (s.fn) {
        s.fn(ctx);
        continue;
      }
      for (const Step& step : pipeline_steps(cfg)) {
        stage = std::string("pipeline/") + step.name;
        step.run(ctx);
      }
    }
    return kOk;
  } catch (const std::exception& e) {
    err << "atp " << stage << ": " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace atp::cli
