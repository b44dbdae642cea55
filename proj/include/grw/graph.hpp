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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "grw/errors.hpp"

namespace grw {

using NodeId = std::int32_t;
using EdgeId = std::int64_t;

/// One undirected edge in canonical form (u < v).
struct EdgeRef {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;
};

struct GraphBuildStats {
  std::int64_t dropped_self_loops = 0;
  std::int64_t collapsed_duplicates = 0;
};

/// Undirected weighted graph in compressed sparse (CSR) form.
///
/// Invariants: adjacency is symmetric, no self-loops are stored, node IDs
/// are dense integers in [0, n). Immutable after construction; safe to
/// share across threads.
class Graph {
 public:
  enum class DuplicatePolicy { kKeepFirst, kSum };

  Graph() = default;

  /// Builds a graph from a raw edge list. Self-loops are dropped and
  /// parallel edges collapsed according to `policy`. `n` must cover every
  /// endpoint.
  static Graph from_edges(NodeId n, std::vector<EdgeRef> raw,
                          DuplicatePolicy policy = DuplicatePolicy::kKeepFirst,
                          GraphBuildStats* stats = nullptr) {
    if (n < 0) throw ArgumentError("graph: negative node count");
    GraphBuildStats local;
    std::vector<EdgeRef> canon;
    canon.reserve(raw.size());
    for (EdgeRef e : raw) {
      if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
        throw ArgumentError("graph: edge endpoint " + std::to_string(std::max(e.u, e.v)) +
                            " out of range [0," + std::to_string(n) + ")");
      }
      if (e.w < 0.0) throw ArgumentError("graph: negative edge weight");
      if (e.u == e.v) {
        ++local.dropped_self_loops;
        continue;
      }
      if (e.u > e.v) std::swap(e.u, e.v);
      canon.push_back(e);
    }
    std::stable_sort(canon.begin(), canon.end(), [](const EdgeRef& a, const EdgeRef& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<EdgeRef> dedup;
    dedup.reserve(canon.size());
    for (const EdgeRef& e : canon) {
      if (!dedup.empty() && dedup.back().u == e.u && dedup.back().v == e.v) {
        if (policy == DuplicatePolicy::kSum) dedup.back().w += e.w;
        ++local.collapsed_duplicates;
      } else {
        dedup.push_back(e);
      }
    }
    if (stats != nullptr) *stats = local;
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(dedup);
    g.build_csr();
    return g;
  }

  NodeId num_nodes() const { return n_; }
  EdgeId num_edges() const { return static_cast<EdgeId>(edges_.size()); }

  /// Canonical undirected edge list, sorted by (u, v) with u < v.
  const std::vector<EdgeRef>& edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    check_node(v);
    return {nbrs_.data() + offsets_[v], nbrs_.data() + offsets_[v + 1]};
  }

  std::span<const double> neighbor_weights(NodeId v) const {
    check_node(v);
    return {wts_.data() + offsets_[v], wts_.data() + offsets_[v + 1]};
  }

  NodeId degree(NodeId v) const {
    check_node(v);
    return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]);
  }

  double weighted_degree(NodeId v) const {
    check_node(v);
    double s = 0.0;
    for (EdgeId i = offsets_[v]; i < offsets_[v + 1]; ++i) s += wts_[i];
    return s;
  }

  bool has_edge(NodeId u, NodeId v) const {
    if (u == v) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  /// Index into edges() for the undirected pair, or -1 when absent.
  EdgeId edge_id(NodeId u, NodeId v) const {
    if (u == v) return -1;
    if (u > v) std::swap(u, v);
    check_node(v);
    auto lo = std::lower_bound(edges_.begin(), edges_.end(), std::pair<NodeId, NodeId>{u, v},
                               [](const EdgeRef& e, const std::pair<NodeId, NodeId>& key) {
                                 return e.u != key.first ? e.u < key.first : e.v < key.second;
                               });
    if (lo == edges_.end() || lo->u != u || lo->v != v) return -1;
    return static_cast<EdgeId>(lo - edges_.begin());
  }

  /// Subgraph induced on `keep` (ascending node IDs). Fills old->new ID map
  /// with -1 for dropped nodes.
  Graph induced_subgraph(const std::vector<NodeId>& keep, std::vector<NodeId>* old_to_new) const {
    std::vector<NodeId> map(n_, -1);
    for (std::size_t i = 0; i < keep.size(); ++i) {
      check_node(keep[i]);
      if (i > 0 && keep[i] <= keep[i - 1]) throw ArgumentError("induced_subgraph: keep list not strictly ascending");
      map[keep[i]] = static_cast<NodeId>(i);
    }
    std::vector<EdgeRef> sub;
    for (const EdgeRef& e : edges_) {
      if (map[e.u] >= 0 && map[e.v] >= 0) sub.push_back({map[e.u], map[e.v], e.w});
    }
    if (old_to_new != nullptr) *old_to_new = std::move(map);
    return from_edges(static_cast<NodeId>(keep.size()), std::move(sub));
  }

 private:
  void check_node(NodeId v) const {
    if (v < 0 || v >= n_) {
      throw ArgumentError("graph: node " + std::to_string(v) + " out of range [0," + std::to_string(n_) + ")");
    }
  }

  void build_csr() {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const EdgeRef& e : edges_) {
      ++offsets_[e.u + 1];
      ++offsets_[e.v + 1];
    }
    for (NodeId i = 0; i < n_; ++i) offsets_[i + 1] += offsets_[i];
    nbrs_.resize(edges_.size() * 2);
    wts_.resize(edges_.size() * 2);
    std::vector<EdgeId> cursor(offsets_.begin(), offsets_.end() - 1);
    for (const EdgeRef& e : edges_) {
      nbrs_[cursor[e.u]] = e.v;
      wts_[cursor[e.u]++] = e.w;
      nbrs_[cursor[e.v]] = e.u;
      wts_[cursor[e.v]++] = e.w;
    }
    // Edges were inserted in ascending (u, v) order, so each neighbor list
    // is already sorted by construction for the u side; the v side needs a
    // per-node sort.
    for (NodeId v = 0; v < n_; ++v) {
      const EdgeId b = offsets_[v];
      const EdgeId e = offsets_[v + 1];
      std::vector<std::pair<NodeId, double>> row;
      row.reserve(static_cast<std::size_t>(e - b));
      for (EdgeId i = b; i < e; ++i) row.emplace_back(nbrs_[i], wts_[i]);
      std::sort(row.begin(), row.end());
      for (EdgeId i = b; i < e; ++i) {
        nbrs_[i] = row[static_cast<std::size_t>(i - b)].first;
        wts_[i] = row[static_cast<std::size_t>(i - b)].second;
      }
    }
  }

  NodeId n_ = 0;
  std::vector<EdgeId> offsets_{0};
  std::vector<NodeId> nbrs_;
  std::vector<double> wts_;
  std::vector<EdgeRef> edges_;
};

}  // namespace grw
