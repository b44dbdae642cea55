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

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <vector>

#include "grw/dataset.hpp"
#include "grw/errors.hpp"
#include "grw/graph.hpp"

namespace grw {

/// Node -> cluster assignment plus cluster sizes. Clusters are disjoint,
/// cover all nodes and carry dense IDs in [0, num_clusters).
struct Partition {
  std::vector<NodeId> assign;
  std::vector<NodeId> sizes;

  NodeId num_clusters() const { return static_cast<NodeId>(sizes.size()); }
  NodeId num_nodes() const { return static_cast<NodeId>(assign.size()); }

  static Partition identity(NodeId n) {
    Partition p;
    p.assign.resize(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) p.assign[static_cast<std::size_t>(i)] = i;
    p.sizes.assign(static_cast<std::size_t>(n), 1);
    return p;
  }

  /// Builds a partition from a raw assignment, relabeling clusters densely
  /// in order of their smallest member node.
  static Partition from_assignment(const std::vector<NodeId>& raw) {
    Partition p;
    p.assign.resize(raw.size());
    std::unordered_map<NodeId, NodeId> relabel;
    relabel.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
      auto [it, inserted] = relabel.try_emplace(raw[i], static_cast<NodeId>(relabel.size()));
      p.assign[i] = it->second;
    }
    p.sizes.assign(relabel.size(), 0);
    for (NodeId c : p.assign) ++p.sizes[static_cast<std::size_t>(c)];
    return p;
  }

  void validate(NodeId n) const {
    if (num_nodes() != n) throw DimensionError("partition covers " + std::to_string(num_nodes()) + " nodes, graph has " + std::to_string(n));
    std::vector<NodeId> count(sizes.size(), 0);
    for (NodeId c : assign) {
      if (c < 0 || c >= num_clusters()) throw DimensionError("partition: cluster ID out of range");
      ++count[static_cast<std::size_t>(c)];
    }
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      if (sizes[j] != count[j]) throw DimensionError("partition: stored size mismatch for cluster " + std::to_string(j));
      if (sizes[j] < 1) throw DimensionError("partition: empty cluster " + std::to_string(j));
    }
  }
};

/// X' = P^T X with the normalized partition matrix P = P_hat C^{-1/2}:
/// row j of the result is the member sum divided by sqrt(|C_j|).
inline Features normalized_partition_apply(const Partition& p, const Features& x) {
  if (x.rows() != p.num_nodes()) {
    throw DimensionError("normalized_partition_apply: " + std::to_string(x.rows()) + " feature rows vs " +
                         std::to_string(p.num_nodes()) + " partition nodes");
  }
  Features out = Features::Zero(p.num_clusters(), x.cols());
  for (NodeId i = 0; i < p.num_nodes(); ++i) {
    out.row(p.assign[static_cast<std::size_t>(i)]) += x.row(i);
  }
  for (NodeId j = 0; j < p.num_clusters(); ++j) {
    out.row(j) /= std::sqrt(static_cast<double>(p.sizes[static_cast<std::size_t>(j)]));
  }
  return out;
}

/// X = P X': the adjoint of normalized_partition_apply. Composing the two
/// realizes P^T P, which is the identity on cluster space.
inline Features normalized_partition_lift(const Partition& p, const Features& coarse) {
  if (coarse.rows() != p.num_clusters()) {
    throw DimensionError("normalized_partition_lift: " + std::to_string(coarse.rows()) + " rows vs " +
                         std::to_string(p.num_clusters()) + " clusters");
  }
  Features out(p.num_nodes(), coarse.cols());
  for (NodeId i = 0; i < p.num_nodes(); ++i) {
    const NodeId c = p.assign[static_cast<std::size_t>(i)];
    out.row(i) = coarse.row(c) / std::sqrt(static_cast<double>(p.sizes[static_cast<std::size_t>(c)]));
  }
  return out;
}

/// Super-node label = dominating label among members; ties go to the
/// smallest class index.
inline Labels coarsen_labels(const Partition& p, const Labels& labels) {
  if (static_cast<NodeId>(labels.y.size()) != p.num_nodes()) {
    throw DimensionError("coarsen_labels: " + std::to_string(labels.y.size()) + " labels vs " +
                         std::to_string(p.num_nodes()) + " partition nodes");
  }
  const NodeId k = p.num_clusters();
  std::vector<std::vector<NodeId>> counts(static_cast<std::size_t>(k),
                                          std::vector<NodeId>(static_cast<std::size_t>(labels.num_classes), 0));
  for (NodeId i = 0; i < p.num_nodes(); ++i) {
    ++counts[static_cast<std::size_t>(p.assign[static_cast<std::size_t>(i)])]
            [static_cast<std::size_t>(labels.y[static_cast<std::size_t>(i)])];
  }
  Labels out;
  out.num_classes = labels.num_classes;
  out.y.resize(static_cast<std::size_t>(k));
  for (NodeId j = 0; j < k; ++j) {
    const auto& row = counts[static_cast<std::size_t>(j)];
    NodeId best = 0;
    for (NodeId c = 1; c < labels.num_classes; ++c) {
      if (row[static_cast<std::size_t>(c)] > row[static_cast<std::size_t>(best)]) best = c;
    }
    out.y[static_cast<std::size_t>(j)] = best;
  }
  return out;
}

/// Coarse graph: super-edge (i, j) carries the summed weight of every
/// original edge crossing between C_i and C_j; intra-cluster edges vanish.
inline Graph build_coarse_graph(const Graph& g, const Partition& p) {
  p.validate(g.num_nodes());
  std::unordered_map<std::uint64_t, double> acc;
  acc.reserve(g.edges().size());
  for (const EdgeRef& e : g.edges()) {
    NodeId a = p.assign[static_cast<std::size_t>(e.u)];
    NodeId b = p.assign[static_cast<std::size_t>(e.v)];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    acc[key] += e.w;
  }
  std::vector<EdgeRef> edges;
  edges.reserve(acc.size());
  for (const auto& [key, w] : acc) {
    edges.push_back({static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffULL), w});
  }
  return Graph::from_edges(p.num_clusters(), std::move(edges), Graph::DuplicatePolicy::kSum);
}

}  // namespace grw
