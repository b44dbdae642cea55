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

#include "grw/errors.hpp"
#include "grw/graph.hpp"
#include "grw/rng.hpp"

namespace grw {

/// Five disjoint node sets covering [0, n):
///   10% target nodes (attack evaluation), 10% clean test, 20% labeled
///   train, 10% validation, remainder unlabeled.
struct DatasetSplit {
  std::vector<NodeId> target_nodes;
  std::vector<NodeId> clean_test_nodes;
  std::vector<NodeId> labeled_train;
  std::vector<NodeId> validation;
  std::vector<NodeId> unlabeled;

  /// labeled_train + validation + unlabeled, ascending: the training graph.
  std::vector<NodeId> training_graph_nodes() const {
    std::vector<NodeId> out;
    out.reserve(labeled_train.size() + validation.size() + unlabeled.size());
    out.insert(out.end(), labeled_train.begin(), labeled_train.end());
    out.insert(out.end(), validation.begin(), validation.end());
    out.insert(out.end(), unlabeled.begin(), unlabeled.end());
    std::sort(out.begin(), out.end());
    return out;
  }
};

/// Seeded Fisher-Yates shuffle of [0, n), sliced in the fixed order
/// target / clean test / labeled train / validation / unlabeled. Sizes are
/// floor(n * pct); the remainder goes to unlabeled.
inline DatasetSplit split_dataset(const Graph& g, RngSeed seed) {
  const NodeId n = g.num_nodes();
  if (n < 10) throw ArgumentError("split_dataset: need at least 10 nodes, got " + std::to_string(n));
  std::vector<NodeId> perm(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  Rng rng(derive_seed(seed, "split"));
  rng.shuffle(perm);

  const std::size_t n_target = static_cast<std::size_t>(n) * 10 / 100;
  const std::size_t n_clean = static_cast<std::size_t>(n) * 10 / 100;
  const std::size_t n_labeled = static_cast<std::size_t>(n) * 20 / 100;
  const std::size_t n_val = static_cast<std::size_t>(n) * 10 / 100;

  DatasetSplit split;
  auto take = [&perm](std::size_t& pos, std::size_t count) {
    std::vector<NodeId> out(perm.begin() + static_cast<std::ptrdiff_t>(pos),
                            perm.begin() + static_cast<std::ptrdiff_t>(pos + count));
    std::sort(out.begin(), out.end());
    pos += count;
    return out;
  };
  std::size_t pos = 0;
  split.target_nodes = take(pos, n_target);
  split.clean_test_nodes = take(pos, n_clean);
  split.labeled_train = take(pos, n_labeled);
  split.validation = take(pos, n_val);
  split.unlabeled = take(pos, static_cast<std::size_t>(n) - pos);
  return split;
}

}  // namespace grw
