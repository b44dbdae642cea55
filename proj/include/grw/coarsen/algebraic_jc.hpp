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
#include <vector>

#include "grw/coarsen/contract.hpp"
#include "grw/graph.hpp"
#include "grw/partition.hpp"
#include "grw/spectral.hpp"

namespace grw {

struct AlgebraicJcOptions {
  int test_vectors = 8;
  int relaxation_sweeps = 20;
  RngSeed seed = 0;
};

struct AlgebraicJcDiagnostics {
  bool stalled = false;
  int levels = 0;
};

/// Algebraic distance of an edge: the maximum per-test-vector value gap
/// after Jacobi relaxation. Strongly coupled endpoints end up close.
inline double algebraic_distance(const Eigen::MatrixXd& x, NodeId u, NodeId v) {
  double dist = 0.0;
  for (Eigen::Index t = 0; t < x.cols(); ++t) {
    dist = std::max(dist, std::abs(x(u, t) - x(v, t)));
  }
  return dist;
}

/// Algebraic JC coarsening: per level, smooth random test vectors by Jacobi
/// relaxation, compute per-edge algebraic distances, and greedily contract
/// the closest unmatched pairs until the cluster count reaches target_n.
inline Partition partition_algebraic_jc(const Graph& g, NodeId target_n,
                                        const AlgebraicJcOptions& opts = {},
                                        AlgebraicJcDiagnostics* diag = nullptr) {
  if (target_n < 1 || target_n > g.num_nodes()) {
    throw ArgumentError("partition_algebraic_jc: target_n " + std::to_string(target_n) + " out of range [1," +
                        std::to_string(g.num_nodes()) + "]");
  }
  if (opts.test_vectors < 1) throw ArgumentError("partition_algebraic_jc: need at least one test vector");
  AlgebraicJcDiagnostics local;
  ContractionState state(g);
  while (state.cluster_count() > target_n) {
    const Graph& cur = state.graph();
    Eigen::MatrixXd x = jacobi_smooth(cur, opts.test_vectors, opts.relaxation_sweeps,
                                      derive_seed(opts.seed, "algebraic-jc", static_cast<std::uint64_t>(local.levels)));
    center_and_normalize_columns(x);
    struct Scored {
      double dist;
      NodeId u, v;
    };
    std::vector<Scored> scored;
    scored.reserve(cur.edges().size());
    double mean_dist = 0.0;
    for (const EdgeRef& e : cur.edges()) {
      scored.push_back({algebraic_distance(x, e.u, e.v), e.u, e.v});
      mean_dist += scored.back().dist;
    }
    if (!scored.empty()) mean_dist /= static_cast<double>(scored.size());
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
      if (a.dist != b.dist) return a.dist < b.dist;
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::vector<bool> matched(static_cast<std::size_t>(cur.num_nodes()), false);
    std::vector<std::vector<NodeId>> groups;
    NodeId remaining = cur.num_nodes();
    for (const Scored& s : scored) {
      if (remaining <= target_n) break;
      // Only strongly coupled pairs contract on this level; weakly coupled
      // ones wait for the re-smoothed distances of the coarser graph.
      if (s.dist > mean_dist && !groups.empty()) break;
      if (matched[static_cast<std::size_t>(s.u)] || matched[static_cast<std::size_t>(s.v)]) continue;
      matched[static_cast<std::size_t>(s.u)] = matched[static_cast<std::size_t>(s.v)] = true;
      groups.push_back({s.u, s.v});
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
