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

#include <numeric>
#include <vector>

#include "grw/dataset.hpp"
#include "grw/graph.hpp"
#include "grw/rng.hpp"

namespace grw {

struct SbmData {
  Graph graph;
  Features features;
  Labels labels;
};

/// Stochastic block model fixture generator. Labels are block indices and
/// features are Gaussian around a per-block mean (4 * e_{b mod d}, unit
/// noise), so blocks are linearly separable in expectation.
inline SbmData generate_sbm(const std::vector<NodeId>& block_sizes, double p_in, double p_out,
                            int d, RngSeed seed) {
  if (block_sizes.empty()) throw ArgumentError("generate_sbm: empty block list");
  for (NodeId b : block_sizes) {
    if (b < 1) throw ArgumentError("generate_sbm: block size must be >= 1");
  }
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
    throw ArgumentError("generate_sbm: probabilities must lie in [0,1]");
  }
  if (d < 1) throw ArgumentError("generate_sbm: feature dim must be >= 1");

  const NodeId n = std::accumulate(block_sizes.begin(), block_sizes.end(), NodeId{0});
  std::vector<NodeId> block(static_cast<std::size_t>(n));
  NodeId cursor = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    for (NodeId i = 0; i < block_sizes[b]; ++i) block[static_cast<std::size_t>(cursor++)] = static_cast<NodeId>(b);
  }

  Rng edge_rng(derive_seed(seed, "sbm-edges"));
  std::vector<EdgeRef> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = block[static_cast<std::size_t>(u)] == block[static_cast<std::size_t>(v)] ? p_in : p_out;
      if (edge_rng.uniform() < p) edges.push_back({u, v, 1.0});
    }
  }

  SbmData out;
  out.graph = Graph::from_edges(n, std::move(edges));
  out.features.resize(n, d);
  Rng feat_rng(derive_seed(seed, "sbm-features"));
  for (NodeId i = 0; i < n; ++i) {
    const int axis = static_cast<int>(block[static_cast<std::size_t>(i)]) % d;
    for (int j = 0; j < d; ++j) {
      out.features(i, j) = (j == axis ? 4.0 : 0.0) + feat_rng.normal();
    }
  }
  out.labels.y.assign(block.begin(), block.end());
  out.labels.num_classes = static_cast<NodeId>(block_sizes.size());
  return out;
}

}  // namespace grw
