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


#ifndef ATP_SRC_CLI_INTERNAL_HPP_
#define ATP_SRC_CLI_INTERNAL_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "atp/cli.hpp"

namespace atp::cli {

namespace fs = std::filesystem;

// Artifact names inside the output directory.
inline constexpr const char* kGraph = "graph.edges";
inline constexpr const char* kFeatures = "features.atpf";
inline constexpr const char* kLabels = "labels.txt";
inline constexpr const char* kCorrected = "corrected.edges";
inline constexpr const char* kCorrectionReport = "correction_report.json";
inline constexpr const char* kKernel = "kernel.csv";
inline constexpr const char* kAnalysis = "analysis.csv";
inline constexpr const char* kAnalysisSummary = "analysis_summary.txt";
inline constexpr const char* kProbeSummary = "probe_summary.txt";
inline constexpr const char* kProbeGroups = "probe_groups.csv";

std::string propagated_name(const PipelineConfig& cfg);
std::string hop_name(const PipelineConfig& cfg, int hop);

std::string hex64(std::uint64_t v);
std::string content_hash(const std::string& bytes);

// One (artifact, stage_hash) pair per consumed upstream artifact.
using Inputs = std::vector<std::pair<std::string, std::string>>;

struct Manifest {
  std::string artifact;
  std::string stage;
  std::string config_hash;
  std::string stage_hash;
  std::string content_hash;
  Inputs inputs;

  std::string serialize() const;
  static Manifest parse(const std::string& text);
};

std::string compute_stage_hash(const std::string& stage,
                               const std::string& params,
                               const Inputs& inputs);

// Settings of the given config sections, in canonical form.
std::string section_params(const PipelineConfig& cfg,
                           std::initializer_list<const char*> sections);

void write_artifact(const fs::path& dir, const std::string& name,
                    const std::string& bytes, const std::string& stage,
                    const PipelineConfig& cfg, const std::string& stage_hash,
                    const Inputs& inputs);

// Reads the manifest of a consumed artifact and checks that it is intact and
// that nothing it was derived from has been rewritten since. Throws
// DependencyError otherwise.
Manifest require_artifact(const fs::path& dir, const std::string& name,
                          const std::string& consumer);

struct Context {
  PipelineConfig cfg;
  fs::path out;
  std::ostream& log;
};

void stage_ingest(Context& ctx);
void stage_correct(Context& ctx);
void stage_encode(Context& ctx);
void stage_propagate(Context& ctx);
void stage_analyze(Context& ctx);
void stage_probe(Context& ctx);
struct Step {
  const char* name;
  void (*run)(Context&);
};

// Stages the pipeline subcommand runs for this config, in order.
std::vector<Step> pipeline_steps(const PipelineConfig& cfg);

}  // namespace atp::cli

#endif  // ATP_SRC_CLI_INTERNAL_HPP_
