// Copyright 2026 The grw Authors
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

#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "grw/errors.hpp"
#include "grw/graph.hpp"

namespace grw {

/// Row i is node i's feature vector.
using Features = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// n integer labels in [0, num_classes).
struct Labels {
  std::vector<NodeId> y;
  NodeId num_classes = 0;
};

struct LoadStats {
  std::int64_t dropped_self_loops = 0;
  std::int64_t collapsed_duplicates = 0;
};

struct Dataset {
  Graph graph;
  Features features;
  Labels labels;
  LoadStats stats;
  /// Dense node ID -> ID used in the input files. Identity for the text
  /// loader (IDs are required to be dense already); retained so reports can
  /// name nodes in input terms.
  std::vector<NodeId> id_map;
};

namespace detail {

inline ParseError parse_error(const std::string& path, std::size_t line, const std::string& why) {
  return ParseError(path + ":" + std::to_string(line) + ": " + why);
}

inline bool parse_double(std::string_view tok, double& out) {
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc{} && p == e;
}

inline bool parse_int(std::string_view tok, long long& out) {
  const char* b = tok.data();
  const char* e = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(b, e, out);
  return ec == std::errc{} && p == e;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::vector<std::string_view> split_csv(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    std::string_view tok = comma == std::string_view::npos ? s.substr(start) : s.substr(start, comma - start);
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) tok.remove_suffix(1);
    out.push_back(tok);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Reads an edge list: one "u v" (optionally "u v w") line per edge,
/// whitespace separated, 0-indexed. Duplicates are collapsed (first weight
/// wins) and self-loops dropped; both are counted in the stats.
inline std::vector<EdgeRef> load_edge_list(const std::string& path, NodeId& max_node) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge file: " + path);
  std::vector<EdgeRef> edges;
  std::string line;
  std::size_t lineno = 0;
  max_node = -1;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    if (toks.size() != 2 && toks.size() != 3) {
      throw detail::parse_error(path, lineno, "expected 'u v' or 'u v w', got " + std::to_string(toks.size()) + " fields");
    }
    long long u = 0;
    long long v = 0;
    if (!detail::parse_int(toks[0], u) || !detail::parse_int(toks[1], v)) {
      throw detail::parse_error(path, lineno, "non-integer node ID");
    }
    if (u < 0 || v < 0) throw detail::parse_error(path, lineno, "negative node ID");
    double w = 1.0;
    if (toks.size() == 3 && !detail::parse_double(toks[2], w)) {
      throw detail::parse_error(path, lineno, "bad edge weight");
    }
    max_node = std::max(max_node, static_cast<NodeId>(std::max(u, v)));
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), w});
  }
  return edges;
}

/// Reads a CSV of reals: n rows, d columns, no header.
inline Features load_features_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open feature file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    auto toks = detail::split_csv(line);
    if (dim == 0) dim = toks.size();
    if (toks.size() != dim) {
      throw detail::parse_error(path, lineno, "expected " + std::to_string(dim) + " columns, got " + std::to_string(toks.size()));
    }
    std::vector<double> row(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      if (!detail::parse_double(toks[j], row[j])) {
        throw detail::parse_error(path, lineno, "bad real in column " + std::to_string(j + 1));
      }
      if (!std::isfinite(row[j])) {
        throw detail::parse_error(path, lineno, "non-finite value in column " + std::to_string(j + 1));
      }
    }
    rows.push_back(std::move(row));
  }
  Features x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < dim; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return x;
}

/// Reads one integer label per line.
inline Labels load_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file: " + path);
  Labels labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    long long y = 0;
    if (toks.size() != 1 || !detail::parse_int(toks[0], y)) {
      throw detail::parse_error(path, lineno, "expected one integer label");
    }
    if (y < 0) throw detail::parse_error(path, lineno, "negative label");
    labels.y.push_back(static_cast<NodeId>(y));
    labels.num_classes = std::max(labels.num_classes, static_cast<NodeId>(y + 1));
  }
  return labels;
}

/// Loads a (graph, features, labels) triple. The node count is max edge
/// endpoint + 1; feature and label row counts must match it exactly.
inline Dataset load_dataset(const std::string& edge_path, const std::string& feature_path,
                            const std::string& label_path) {
  NodeId max_node = -1;
  std::vector<EdgeRef> edges = load_edge_list(edge_path, max_node);
  const NodeId n = max_node + 1;
  Dataset ds;
  GraphBuildStats gstats;
  ds.graph = Graph::from_edges(n, std::move(edges), Graph::DuplicatePolicy::kKeepFirst, &gstats);
  ds.stats.dropped_self_loops = gstats.dropped_self_loops;
  ds.stats.collapsed_duplicates = gstats.collapsed_duplicates;
  ds.features = load_features_csv(feature_path);
  if (ds.features.rows() != n) {
    throw DimensionError("feature rows (" + std::to_string(ds.features.rows()) + ") != node count (" +
                         std::to_string(n) + ")");
  }
  ds.labels = load_labels(label_path);
  if (static_cast<NodeId>(ds.labels.y.size()) != n) {
    throw DimensionError("label rows (" + std::to_string(ds.labels.y.size()) + ") != node count (" +
                         std::to_string(n) + ")");
  }
  ds.id_map.resize(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) ds.id_map[static_cast<std::size_t>(i)] = i;
  return ds;
}

inline void save_edge_list(const Graph& g, const std::string& path, bool with_weights = true) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write edge file: " + path);
  char buf[64];
  for (const EdgeRef& e : g.edges()) {
    if (with_weights && e.w != 1.0) {
      std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", e.u, e.v, e.w);
    } else {
      std::snprintf(buf, sizeof(buf), "%d %d\n", e.u, e.v);
    }
    out << buf;
  }
}

inline void save_features_csv(const Features& x, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write feature file: " + path);
  char buf[40];
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    std::string line;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", x(i, j));
      if (j > 0) line += ',';
      line += buf;
    }
    line += '\n';
    out << line;
  }
}

inline void save_labels(const Labels& labels, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write label file: " + path);
  for (NodeId y : labels.y) out << y << '\n';
}

}  // namespace grw
