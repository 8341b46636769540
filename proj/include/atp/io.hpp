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


#ifndef ATP_IO_HPP_
#define ATP_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "atp/graph.hpp"

namespace atp {

struct EdgeListOptions {
  std::optional<std::size_t> n_hint;
  // Accept input whose two directions disagree, keeping the larger weight.
  bool symmetrize = false;
};

// Reads "u v [w]" lines ('#' comments allowed). Both listed directions of an
// edge collapse to one undirected edge; repeated identical lines sum.
SparseGraph read_edge_list(std::istream& in, const EdgeListOptions& opts = {});
SparseGraph load_edge_list(const std::filesystem::path& path,
                           const EdgeListOptions& opts = {});

// Writes "u v w" for every undirected edge with u < v. A header comment
// records the node count so isolated trailing nodes survive a reload.
void write_edge_list(std::ostream& out, const SparseGraph& g);
void save_edge_list(const std::filesystem::path& path, const SparseGraph& g);

// ATPF binary: "ATPF", u32 version 1, u64 n, u64 f, n*f little-endian f64.
void write_features_atpf(std::ostream& out, const FeatureMatrix& x);
FeatureMatrix read_features_atpf(std::istream& in);
void write_features_csv(std::ostream& out, const FeatureMatrix& x);
FeatureMatrix read_features_csv(std::istream& in);
// Dispatches on the ATPF magic; anything else is parsed as CSV.
FeatureMatrix load_features(const std::filesystem::path& path);
void save_features(const std::filesystem::path& path, const FeatureMatrix& x,
                   bool csv = false);

// One integer per line; -1 marks an unlabeled node.
LabelVector read_labels(std::istream& in);
LabelVector load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const LabelVector& y);

// One non-negative integer per line.
std::vector<int> load_node_depths(const std::filesystem::path& path);

// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace atp

#endif  // ATP_IO_HPP_
