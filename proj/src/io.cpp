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


#include "atp/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "atp/error.hpp"

namespace atp {
namespace {

constexpr std::string_view kNodesHeader = "# nodes:";

std::vector<std::string_view> split_tokens(std::string_view line,
                                           std::string_view delims) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    i = line.find_first_not_of(delims, i);
    if (i == std::string_view::npos) break;
    std::size_t j = line.find_first_of(delims, i);
    if (j == std::string_view::npos) j = line.size();
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, out);
  return ec == std::errc() && ptr == end;
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), b.size());
}

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b.data(), b.size());
}

std::uint64_t get_le(std::istream& in, int bytes) {
  std::array<unsigned char, 8> b{};
  in.read(reinterpret_cast<char*>(b.data()), bytes);
  if (in.gcount() != bytes) throw ParseError("truncated ATPF stream", 0);
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= std::uint64_t(b[i]) << (8 * i);
  return v;
}

std::ifstream open_in(const std::filesystem::path& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

std::string format_double(double x) {
  std::array<char, 32> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

SparseGraph read_edge_list(std::istream& in, const EdgeListOptions& opts) {
  std::map<std::pair<NodeId, NodeId>, double> directed;
  std::size_t n = opts.n_hint.value_or(0);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (text.starts_with(kNodesHeader)) {
        std::size_t hint = 0;
        if (parse_number(trim(text.substr(kNodesHeader.size())), hint))
          n = std::max(n, hint);
      }
      continue;
    }
    const auto tok = split_tokens(text, " \t");
    if (tok.size() != 2 && tok.size() != 3)
      throw ParseError("expected 'u v [w]'", lineno);
    std::int64_t ids[2];
    for (int i = 0; i < 2; ++i) {
      if (!parse_number(tok[i], ids[i]))
        throw ParseError("bad node id '" + std::string(tok[i]) + "'", lineno);
      if (ids[i] < 0)
        throw ValidationError("negative node id on line " +
                              std::to_string(lineno));
      if (ids[i] >= std::int64_t(std::numeric_limits<NodeId>::max()))
        throw ValidationError("node id too large on line " +
                              std::to_string(lineno));
    }
    double w = 1.0;
    if (tok.size() == 3 && !parse_number(tok[2], w))
      throw ParseError("bad weight '" + std::string(tok[2]) + "'", lineno);
    if (!std::isfinite(w) || w < 0.0)
      throw ValidationError("weight must be finite and >= 0 on line " +
                            std::to_string(lineno));
    if (ids[0] == ids[1])
      throw ValidationError("self-loop on line " + std::to_string(lineno) +
                            "; loops are added by the propagation stage");
    const auto u = static_cast<NodeId>(ids[0]);
    const auto v = static_cast<NodeId>(ids[1]);
    directed[{u, v}] += w;
    n = std::max<std::size_t>(n, std::max(u, v) + std::size_t{1});
  }

  std::vector<Edge> edges;
  for (const auto& [key, w] : directed) {
    const auto [u, v] = key;
    const auto rev = directed.find({v, u});
    if (rev == directed.end()) {
      edges.push_back({u, v, w});
      continue;
    }
    if (u > v) continue;  // pair handled from its lower endpoint
    if (rev->second != w && !opts.symmetrize)
      throw ValidationError("edge (" + std::to_string(u) + "," +
                            std::to_string(v) +
                            ") has direction-dependent weights; input looks "
                            "directed (use symmetrize)");
    edges.push_back({u, v, std::max(w, rev->second)});
  }
  return SparseGraph::from_edges(n, edges);
}

SparseGraph load_edge_list(const std::filesystem::path& path,
                           const EdgeListOptions& opts) {
  auto in = open_in(path, false);
  return read_edge_list(in, opts);
}

void write_edge_list(std::ostream& out, const SparseGraph& g) {
  out << kNodesHeader << ' ' << g.num_nodes() << '\n';
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
  }
}

void save_edge_list(const std::filesystem::path& path, const SparseGraph& g) {
  if (g.has_self_loops())
    throw InvalidStateError("edge-list files carry loop-free graphs only");
  auto out = open_out(path);
  write_edge_list(out, g);
}

void write_features_atpf(std::ostream& out, const FeatureMatrix& x) {
  out.write("ATPF", 4);
  put_u32(out, 1);
  put_u64(out, x.rows());
  put_u64(out, x.cols());
  for (double v : x.data()) put_u64(out, std::bit_cast<std::uint64_t>(v));
}

FeatureMatrix read_features_atpf(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, "ATPF", 4) != 0)
    throw ParseError("missing ATPF magic", 0);
  const auto version = get_le(in, 4);
  if (version != 1)
    throw ParseError("unsupported ATPF version " + std::to_string(version), 0);
  const auto n = get_le(in, 8);
  const auto f = get_le(in, 8);
  std::vector<double> data(n * f);
  for (auto& v : data) v = std::bit_cast<double>(get_le(in, 8));
  return FeatureMatrix(n, f, std::move(data));
}

void write_features_csv(std::ostream& out, const FeatureMatrix& x) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      if (c) out << ',';
      out << format_double(x(r, c));
    }
    out << '\n';
  }
}

FeatureMatrix read_features_csv(std::istream& in) {
  std::vector<double> data;
  std::size_t rows = 0, cols = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto tok = split_tokens(text, ", \t");
    if (rows == 0) cols = tok.size();
    if (tok.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " columns", lineno);
    for (auto t : tok) {
      double v;
      if (!parse_number(t, v))
        throw ParseError("bad number '" + std::string(t) + "'", lineno);
      if (!std::isfinite(v))
        throw ValidationError("non-finite feature on line " +
                              std::to_string(lineno));
      data.push_back(v);
    }
    ++rows;
  }
  return FeatureMatrix(rows, cols, std::move(data));
}

FeatureMatrix load_features(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  char magic[4] = {};
  in.read(magic, 4);
  const bool atpf = in.gcount() == 4 && std::memcmp(magic, "ATPF", 4) == 0;
  in.clear();
  in.seekg(0);
  return atpf ? read_features_atpf(in) : read_features_csv(in);
}

void save_features(const std::filesystem::path& path, const FeatureMatrix& x,
                   bool csv) {
  auto out = open_out(path);
  if (csv)
    write_features_csv(out, x);
  else
    write_features_atpf(out, x);
}

LabelVector read_labels(std::istream& in) {
  LabelVector y;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    int v;
    if (!parse_number(text, v))
      throw ParseError("bad label '" + std::string(text) + "'", lineno);
    if (v < kUnlabeled)
      throw ValidationError("label below -1 on line " +
                            std::to_string(lineno));
    y.values.push_back(v);
  }
  return y;
}

LabelVector load_labels(const std::filesystem::path& path) {
  auto in = open_in(path, false);
  return read_labels(in);
}

void save_labels(const std::filesystem::path& path, const LabelVector& y) {
  auto out = open_out(path);
  for (int v : y.values) out << v << '\n';
}

std::vector<int> load_node_depths(const std::filesystem::path& path) {
  auto in = open_in(path, false);
  std::vector<int> depths;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    int v;
    if (!parse_number(text, v))
      throw ParseError("bad depth '" + std::string(text) + "'", lineno);
    if (v < 0)
      throw ValidationError("negative depth on line " + std::to_string(lineno));
    depths.push_back(v);
  }
  return depths;
}

std::string read_file(const std::filesystem::path& path) {
  auto in = open_in(path, true);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  auto out = open_out(path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace atp
