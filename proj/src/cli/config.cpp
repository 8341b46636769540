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
#include <cstdio>
#include <sstream>
#include <string_view>

#include "atp/cli.hpp"
#include "atp/error.hpp"
#include "atp/io.hpp"
#include "atp/rng.hpp"

namespace atp::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view v, std::size_t line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("'" + std::string(key) + "' expects a number, got '" +
                         std::string(v) + "'",
                     line);
  return x;
}

long long to_int(std::string_view key, std::string_view v, std::size_t line) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("'" + std::string(key) + "' expects an integer, got '" +
                         std::string(v) + "'",
                     line);
  return x;
}

std::uint64_t to_u64(std::string_view key, std::string_view v,
                     std::size_t line) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError("'" + std::string(key) +
                         "' expects a non-negative integer, got '" +
                         std::string(v) + "'",
                     line);
  return x;
}

bool to_bool(std::string_view key, std::string_view v, std::size_t line) {
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw ParseError("'" + std::string(key) + "' expects a boolean, got '" +
                       std::string(v) + "'",
                   line);
}

std::vector<double> to_list(std::string_view key, std::string_view v,
                            std::size_t line) {
  std::vector<double> out;
  while (!v.empty()) {
    const auto comma = v.find(',');
    out.push_back(to_double(key, trim(v.substr(0, comma)), line));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

OutputMode parse_mode(std::string_view v) {
  if (v == "sum") return OutputMode::kSum;
  if (v == "concat") return OutputMode::kConcat;
  throw ValidationError("unknown propagation mode '" + std::string(v) +
                        "' (expected sum or concat)");
}

void set(PipelineConfig& c, std::string_view section, std::string_view key,
         std::string_view v, std::size_t line) {
  const std::string full = std::string(section) + "." + std::string(key);
  auto num = [&] { return to_double(full, v, line); };
  auto integer = [&] { return to_int(full, v, line); };
  auto flag = [&] { return to_bool(full, v, line); };

  if (section == "paths") {
    if (key == "graph") return void(c.paths.graph = v);
    if (key == "features") return void(c.paths.features = v);
    if (key == "labels") return void(c.paths.labels = v);
    if (key == "split") return void(c.paths.split = v);
    if (key == "depths") return void(c.paths.depths = v);
    if (key == "out") return void(c.paths.out = v);
    if (key == "probe_features") return void(c.paths.probe_features = v);
    if (key == "probe_labels") return void(c.paths.probe_labels = v);
  } else if (section == "ingest") {
    if (key == "n_hint")
      return void(c.ingest.n_hint = to_u64(full, v, line));
    if (key == "symmetrize") return void(c.ingest.symmetrize = flag());
  } else if (section == "correction") {
    if (key == "theta") return void(c.correction.theta = num());
    if (key == "sparse_sample_ratio")
      return void(c.correction.sparse_sample_ratio = num());
    if (key == "mask_fraction") return void(c.correction.mask_fraction = num());
    if (key == "mask_token") return void(c.correction.mask_token = num());
    if (key == "epsilon") return void(c.correction.epsilon = num());
    if (key == "k") return void(c.correction.epsilon_k = integer());
    if (key == "lambda2") return void(c.correction.lambda2 = num());
    if (key == "skip") return void(c.correction.skip = flag());
  } else if (section == "encoding") {
    if (key == "c_norm") return void(c.encoding.c_norm = num());
    if (key == "use_eigen") return void(c.encoding.use_eigen = flag());
    if (key == "power_tol") return void(c.encoding.power_iter_tol = num());
    if (key == "power_max")
      return void(c.encoding.power_iter_max = to_u64(full, v, line));
    if (key == "k_order") return void(c.encoding.k_order = integer());
    if (key == "cluster_variant")
      return void(c.encoding.cluster_variant = parse_cluster_variant(v));
  } else if (section == "propagation") {
    if (key == "k") return void(c.propagation.k = integer());
    if (key == "scheme")
      return void(c.propagation.scheme.kind = parse_scheme_kind(v));
    if (key == "beta") return void(c.propagation.scheme.beta = num());
    if (key == "omega") return void(c.propagation.scheme.omega = num());
    if (key == "rho") return void(c.propagation.scheme.rho = num());
    if (key == "weights")
      return void(c.propagation.scheme.custom = to_list(full, v, line));
    if (key == "mode") return void(c.propagation.mode = parse_mode(v));
    if (key == "fixed_r") return void(c.propagation.fixed_r = num());
    if (key == "format") {
      if (v != "atpf" && v != "csv")
        throw ParseError("propagation.format must be atpf or csv", line);
      return void(c.propagation.csv = v == "csv");
    }
  } else if (section == "analyze") {
    if (key == "enabled") return void(c.analyze.enabled = flag());
    if (key == "dense") return void(c.analyze.dense = flag());
    if (key == "k") return void(c.analyze.k = integer());
  } else if (section == "probe") {
    if (key == "lr") return void(c.probe.learning_rate = num());
    if (key == "epochs") return void(c.probe.epochs = integer());
    if (key == "l2") return void(c.probe.l2 = num());
    if (key == "degree_threshold")
      return void(c.probe.degree_threshold = num());
  } else if (section == "pipeline") {
    if (key == "seed") return void(c.seed = to_u64(full, v, line));
  }
  throw ParseError("unknown config key '" + full + "'", line);
}

template <class T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "none";
  if constexpr (std::is_floating_point_v<T>) return format_double(*v);
  else return std::to_string(*v);
}

}  // namespace

MaskParams PipelineConfig::mask_params() const {
  MaskParams p;
  p.theta = correction.theta;
  p.sparse_sample_ratio = correction.sparse_sample_ratio;
  p.edge_mask_fraction = correction.mask_fraction;
  p.mask_token = correction.mask_token;
  p.seed = sub_seed(seed, "correct");
  return p;
}

ProbeConfig PipelineConfig::probe_config() const {
  ProbeConfig p;
  p.learning_rate = probe.learning_rate;
  p.epochs = probe.epochs;
  p.l2 = probe.l2;
  p.seed = sub_seed(seed, "probe");
  return p;
}

void apply_config_text(PipelineConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::string section = "pipeline";
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view s = trim(raw);
    if (s.empty() || s.front() == '#' || s.front() == ';') continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3)
        throw ParseError("malformed section header", line);
      section = std::string(trim(s.substr(1, s.size() - 2)));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", line);
    const auto key = trim(s.substr(0, eq));
    const auto value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line);
    set(cfg, section, key, value, line);
  }
}

PipelineConfig load_config(const std::filesystem::path& path) {
  PipelineConfig cfg;
  apply_config_text(cfg, read_file(path));
  return cfg;
}

std::string canonical_config(const PipelineConfig& c) {
  std::ostringstream o;
  o << "pipeline.seed=" << c.seed << '\n'
    << "ingest.n_hint=" << opt(c.ingest.n_hint) << '\n'
    << "ingest.symmetrize=" << c.ingest.symmetrize << '\n'
    << "correction.skip=" << c.correction.skip << '\n'
    << "correction.theta=" << format_double(c.correction.theta) << '\n'
    << "correction.sparse_sample_ratio="
    << format_double(c.correction.sparse_sample_ratio) << '\n'
    << "correction.mask_fraction=" << format_double(c.correction.mask_fraction)
    << '\n'
    << "correction.mask_token=" << format_double(c.correction.mask_token)
    << '\n'
    << "correction.epsilon=" << opt(c.correction.epsilon) << '\n'
    << "correction.k=" << opt(c.correction.epsilon_k) << '\n'
    << "correction.lambda2=" << opt(c.correction.lambda2) << '\n'
    << "encoding.c_norm=" << format_double(c.encoding.c_norm) << '\n'
    << "encoding.use_eigen=" << c.encoding.use_eigen << '\n'
    << "encoding.power_tol=" << format_double(c.encoding.power_iter_tol)
    << '\n'
    << "encoding.power_max=" << c.encoding.power_iter_max << '\n'
    << "encoding.k_order=" << c.encoding.k_order << '\n'
    << "encoding.cluster_variant="
    << cluster_variant_name(c.encoding.cluster_variant) << '\n'
    << "propagation.k=" << c.propagation.k << '\n'
    << "propagation.scheme=" << scheme_name(c.propagation.scheme.kind) << '\n'
    << "propagation.beta=" << format_double(c.propagation.scheme.beta) << '\n'
    << "propagation.omega=" << format_double(c.propagation.scheme.omega)
    << '\n'
    << "propagation.rho=" << format_double(c.propagation.scheme.rho) << '\n'
    << "propagation.weights=";
  for (std::size_t i = 0; i < c.propagation.scheme.custom.size(); ++i)
    o << (i ? "," : "") << format_double(c.propagation.scheme.custom[i]);
  o << '\n'
    << "propagation.mode="
    << (c.propagation.mode == OutputMode::kSum ? "sum" : "concat") << '\n'
    << "propagation.fixed_r=" << opt(c.propagation.fixed_r) << '\n'
    << "propagation.format=" << (c.propagation.csv ? "csv" : "atpf") << '\n'
    << "analyze.enabled=" << c.analyze.enabled << '\n'
    << "analyze.dense=" << c.analyze.dense << '\n'
    << "analyze.k=" << opt(c.analyze.k) << '\n'
    << "probe.lr=" << format_double(c.probe.learning_rate) << '\n'
    << "probe.epochs=" << c.probe.epochs << '\n'
    << "probe.l2=" << format_double(c.probe.l2) << '\n'
    << "probe.degree_threshold=" << format_double(c.probe.degree_threshold)
    << '\n';
  return o.str();
}

std::string config_hash(const PipelineConfig& cfg) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_config(cfg))));
  return buf;
}

}  // namespace atp::cli
