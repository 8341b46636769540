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


#ifndef ATP_CLI_HPP_
#define ATP_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atp/correction.hpp"
#include "atp/lnc.hpp"
#include "atp/probe.hpp"
#include "atp/propagation.hpp"

namespace atp::cli {

inline constexpr const char* kVersion = "0.3.0";

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kBadInput = 2,
  kRefused = 3,
};

struct PathsConfig {
  std::string graph;
  std::string features;
  std::string labels;
  std::string split;
  std::string depths;
  std::string out = "atp_out";
  // Probe inputs that bypass the output-directory artifacts.
  std::string probe_features;
  std::string probe_labels;
};

struct IngestConfig {
  std::optional<std::size_t> n_hint;
  bool symmetrize = false;
};

struct CorrectionConfig {
  double theta = 0.10;
  double sparse_sample_ratio = 0.2;
  double mask_fraction = 0.5;
  double mask_token = 0.0;
  std::optional<double> epsilon;  // switches to bound-threshold selection
  std::optional<int> epsilon_k;   // defaults to the propagation k
  std::optional<double> lambda2;
  bool skip = false;
};

struct PropagateConfig {
  int k = 2;
  WeightScheme scheme;
  OutputMode mode = OutputMode::kSum;
  std::optional<double> fixed_r;  // bypasses encoding
  bool csv = false;
};

struct AnalyzeConfig {
  bool enabled = false;  // pipeline only
  bool dense = false;
  std::optional<int> k;
};

struct ProbeStageConfig {
  double learning_rate = 0.1;
  int epochs = 300;
  double l2 = 1e-4;
  double degree_threshold = 3.0;
};

// Flat "key = value" text with [section] headers; see README for the keys.
struct PipelineConfig {
  PathsConfig paths;
  IngestConfig ingest;
  CorrectionConfig correction;
  EncodingConfig encoding;
  PropagateConfig propagation;
  AnalyzeConfig analyze;
  ProbeStageConfig probe;
  std::uint64_t seed = 0;

  MaskParams mask_params() const;
  ProbeConfig probe_config() const;
};

// Applies "key = value" lines to cfg. Unknown keys are rejected.
void apply_config_text(PipelineConfig& cfg, const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);

// Canonical text of every setting that affects outputs. Paths are excluded so
// that the same settings hash identically in any output directory.
std::string canonical_config(const PipelineConfig& cfg);
std::string config_hash(const PipelineConfig& cfg);

// Entry point behind the `atp` binary. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace atp::cli

#endif  // ATP_CLI_HPP_
