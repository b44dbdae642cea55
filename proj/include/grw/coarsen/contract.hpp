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

#include <vector>

#include "grw/graph.hpp"
#include "grw/partition.hpp"

namespace grw {

/// Multilevel contraction bookkeeping shared by the coarsening methods:
/// keeps the current coarse graph plus the original-node assignment, and
/// folds one level's merge groups into both.
class ContractionState {
 public:
  explicit ContractionState(const Graph& g) : cur_(g) {
    orig_assign_.resize(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId i = 0; i < g.num_nodes(); ++i) orig_assign_[static_cast<std::size_t>(i)] = i;
  }

  const Graph& graph() const { return cur_; }
  NodeId cluster_count() const { return cur_.num_nodes(); }

  /// Merges each group of current-level nodes into one cluster. Groups must
  /// be disjoint; nodes left out stay singletons.
  void apply_level(const std::vector<std::vector<NodeId>>& groups) {
    const NodeId n = cur_.num_nodes();
    std::vector<NodeId> raw(static_cast<std::size_t>(n));
    for (NodeId i = 0; i < n; ++i) raw[static_cast<std::size_t>(i)] = i;
    for (const auto& group : groups) {
      const NodeId rep = group.front();
      for (NodeId member : group) raw[static_cast<std::size_t>(member)] = rep;
    }
    Partition level = Partition::from_assignment(raw);
    for (NodeId& a : orig_assign_) a = level.assign[static_cast<std::size_t>(a)];
    cur_ = build_coarse_graph(cur_, level);
  }

  /// Final partition of the original node set.
  Partition finish() const { return Partition::from_assignment(orig_assign_); }

 private:
  Graph cur_;
  std::vector<NodeId> orig_assign_;
};

}  // namespace grw
