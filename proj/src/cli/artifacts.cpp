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


#include <cstdio>
#include <sstream>

#include "atp/error.hpp"
#include "atp/io.hpp"
#include "atp/rng.hpp"
#include "internal.hpp"

namespace atp::cli {

std::string propagated_name(const PipelineConfig& cfg) {
  return cfg.propagation.csv ? "propagated.csv" : "propagated.atpf";
}

std::string hop_name(const PipelineConfig& cfg, int hop) {
  return propagated_name(cfg) + ".hop" + std::to_string(hop);
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

std::string content_hash(const std::string& bytes) {
  return hex64(fnv1a64(bytes));
}

std::string Manifest::serialize() const {
  std::ostringstream o;
  o << "artifact = " << artifact << '\n'
    << "stage = " << stage << '\n'
    << "config_hash = " << config_hash << '\n'
    << "stage_hash = " << stage_hash << '\n'
    << "content_hash = " << content_hash << '\n';
  for (const auto& [name, hash] : inputs)
    o << "input = " << name << ' ' << hash << '\n';
  return o.str();
}

Manifest Manifest::parse(const std::string& text) {
  Manifest m;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw ParseError("bad manifest line", lineno);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 3);
    if (key == "artifact") m.artifact = value;
    else if (key == "stage") m.stage = value;
    else if (key == "config_hash") m.config_hash = value;
    else if (key == "stage_hash") m.stage_hash = value;
    else if (key == "content_hash") m.content_hash = value;
    else if (key == "input") {
      const auto sp = value.rfind(' ');
      if (sp == std::string::npos) throw ParseError("bad manifest input", lineno);
      m.inputs.emplace_back(value.substr(0, sp), value.substr(sp + 1));
    } else {
      throw ParseError("unknown manifest key '" + key + "'", lineno);
    }
  }
  if (m.artifact.empty() || m.stage_hash.empty() || m.content_hash.empty())
    throw ParseError("incomplete manifest", lineno);
  return m;
}

std::string compute_stage_hash(const std::string& stage,
                               const std::string& params,
                               const Inputs& inputs) {
  std::string text = "stage=" + stage + '\n' + params;
  for (const auto& [name, hash] : inputs)
    text += "input=" + name + ' ' + hash + '\n';
  return hex64(fnv1a64(text));
}

std::string section_params(const PipelineConfig& cfg,
                           std::initializer_list<const char*> sections) {
  std::istringstream in(canonical_config(cfg));
  std::string out;
  std::string line;
  while (std::getline(in, line))
    for (const char* s : sections)
      if (line.starts_with(std::string(s) + ".")) {
        out += line + '\n';
        break;
      }
  return out;
}

void write_artifact(const fs::path& dir, const std::string& name,
                    const std::string& bytes, const std::string& stage,
                    const PipelineConfig& cfg, const std::string& stage_hash,
                    const Inputs& inputs) {
  Manifest m{name, stage, config_hash(cfg), stage_hash, content_hash(bytes),
             inputs};
  write_file(dir / name, bytes);
  write_file(dir / (name + ".manifest"), m.serialize());
}

namespace {

Manifest read_manifest(const fs::path& dir, const std::string& name,
                       const std::string& consumer) {
  const fs::path artifact = dir / name;
  const fs::path sidecar = dir / (name + ".manifest");
  if (!fs::exists(artifact) || !fs::exists(sidecar))
    throw DependencyError(consumer + " needs '" + artifact.string() +
                          "', which is missing; run the producing stage first");
  Manifest m = Manifest::parse(read_file(sidecar));
  if (content_hash(read_file(artifact)) != m.content_hash)
    throw DependencyError("'" + artifact.string() +
                          "' does not match its manifest (modified by hand?)");
  return m;
}

void check_inputs(const fs::path& dir, const Manifest& m,
                  const std::string& consumer, int depth) {
  if (depth > 16) throw DependencyError("manifest chain too deep");
  for (const auto& [name, recorded] : m.inputs) {
    const Manifest up = read_manifest(dir, name, consumer);
    if (up.stage_hash != recorded)
      throw DependencyError("'" + m.artifact + "' is stale: its input '" +
                            name + "' was rewritten since; rerun the " +
                            m.stage + " stage");
    check_inputs(dir, up, consumer, depth + 1);
  }
}

}  // namespace

Manifest require_artifact(const fs::path& dir, const std::string& name,
                          const std::string& consumer) {
  Manifest m = read_manifest(dir, name, consumer);
  check_inputs(dir, m, consumer, 0);
  return m;
}

}  // namespace atp::cli
