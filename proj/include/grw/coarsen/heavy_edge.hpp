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
#include <vector>

#include "grw/coarsen/contract.hpp"
#include "grw/graph.hpp"
#include "grw/partition.hpp"

namespace grw {

struct HeavyEdgeDiagnostics {
  /// Set when no matchable edges remained before reaching the target size
  /// (edgeless graphs end up here immediately).
  bool stalled = false;
  int levels = 0;
};

/// Heavy Edge Matching. Each level computes a maximal matching where an
/// edge's rank is the maximum endpoint degree, preferring SMALL maxima so
/// that pairs peripheral to the graph core contract first; matched pairs
/// merge and the level repeats until the cluster count reaches target_n.
inline Partition partition_heavy_edge(const Graph& g, NodeId target_n,
                                      HeavyEdgeDiagnostics* diag = nullptr) {
  if (target_n < 1 || target_n > g.num_nodes()) {
    throw ArgumentError("partition_heavy_edge: target_n " + std::to_string(target_n) + " out of range [1," +
                        std::to_string(g.num_nodes()) + "]");
  }
  HeavyEdgeDiagnostics local;
  ContractionState state(g);
  while (state.cluster_count() > target_n) {
    const Graph& cur = state.graph();
    struct Ranked {
      double key;
      NodeId u, v;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(cur.edges().size());
    for (const EdgeRef& e : cur.edges()) {
      const double key = static_cast<double>(std::max(cur.degree(e.u), cur.degree(e.v)));
      ranked.push_back({key, e.u, e.v});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      if (a.key != b.key) return a.key < b.key;
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<bool> matched(static_cast<std::size_t>(cur.num_nodes()), false);
    std::vector<std::vector<NodeId>> groups;
    NodeId remaining = cur.num_nodes();
    for (const Ranked& r : ranked) {
      if (remaining <= target_n) break;
      if (matched[static_cast<std::size_t>(r.u)] || matched[static_cast<std::size_t>(r.v)]) continue;
      matched[static_cast<std::size_t>(r.u)] = matched[static_cast<std::size_t>(r.v)] = true;
      groups.push_back({r.u, r.v});
      --remaining;
    }
    if (groups.empty()) {
      local.stalled = true;
      break;
    }
    state.apply_level(groups);
    ++local.levels;
  }
  if (diag != nullptr) *diag = local;
  return state.finish();
}

}  // namespace grw
