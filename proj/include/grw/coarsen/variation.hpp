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

enum class VariationFamily { kNeighborhood, kClique, kEdge };

struct VariationOptions {
  int test_vectors = 8;
  int relaxation_sweeps = 10;
  RngSeed seed = 0;
  /// Upper bound on enumerated maximal cliques per level (clique family).
  std::int64_t max_cliques = 100000;
};

struct VariationDiagnostics {
  /// True when the greedy pass could not contract anything (e.g. edgeless
  /// graph) and the target size was not reached.
  bool stalled = false;
  /// True when Bron-Kerbosch hit the clique enumeration cap on some level.
  bool clique_cap_hit = false;
  int levels = 0;
};

namespace detail {

/// Maximal cliques via Bron-Kerbosch with pivoting. Enumeration stops once
/// `cap` cliques were reported.
class BronKerbosch {
 public:
  BronKerbosch(const Graph& g, std::int64_t cap) : g_(g), cap_(cap) {}

  bool run(std::vector<std::vector<NodeId>>& out) {
    out_ = &out;
    std::vector<NodeId> r;
    std::vector<NodeId> p(static_cast<std::size_t>(g_.num_nodes()));
    for (NodeId i = 0; i < g_.num_nodes(); ++i) p[static_cast<std::size_t>(i)] = i;
    std::vector<NodeId> x;
    expand(r, std::move(p), std::move(x));
    return capped_;
  }

 private:
  std::vector<NodeId> intersect_neighbors(const std::vector<NodeId>& sorted, NodeId v) const {
    std::vector<NodeId> out;
    auto nb = g_.neighbors(v);
    std::set_intersection(sorted.begin(), sorted.end(), nb.begin(), nb.end(), std::back_inserter(out));
    return out;
  }

  void expand(std::vector<NodeId>& r, std::vector<NodeId> p, std::vector<NodeId> x) {
    if (capped_) return;
    if (p.empty() && x.empty()) {
      if (r.size() >= 2) {
        out_->push_back(r);
        if (static_cast<std::int64_t>(out_->size()) >= cap_) capped_ = true;
      }
      return;
    }
    // Pivot: vertex of P union X with the most neighbors in P.
    NodeId pivot = -1;
    std::size_t best = 0;
    auto consider = [&](NodeId u) {
      const std::size_t cnt = intersect_neighbors(p, u).size();
      if (pivot < 0 || cnt > best) {
        pivot = u;
        best = cnt;
      }
    };
    for (NodeId u : p) consider(u);
    for (NodeId u : x) consider(u);
    std::vector<NodeId> pivot_nbrs;
    if (pivot >= 0) {
      auto nb = g_.neighbors(pivot);
      pivot_nbrs.assign(nb.begin(), nb.end());
    }
    std::vector<NodeId> frontier;
    std::set_difference(p.begin(), p.end(), pivot_nbrs.begin(), pivot_nbrs.end(), std::back_inserter(frontier));
    for (NodeId v : frontier) {
      if (capped_) return;
      r.push_back(v);
      expand(r, intersect_neighbors(p, v), intersect_neighbors(x, v));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::upper_bound(x.begin(), x.end(), v), v);
    }
  }

  const Graph& g_;
  std::int64_t cap_;
  std::vector<std::vector<NodeId>>* out_ = nullptr;
  bool capped_ = false;
};

struct Candidate {
  std::vector<NodeId> members;  // sorted ascending
  double cost = 0.0;
};

/// Local variation cost of contracting a candidate set: the within-set
/// variance of the smoothed test vectors, normalized per merged degree of
/// freedom. Sets whose nodes carry nearly equal smooth signals are cheap.
inline double variation_cost(const std::vector<NodeId>& members, const Eigen::MatrixXd& x) {
  const auto k = x.cols();
  const double m = static_cast<double>(members.size());
  double total = 0.0;
  for (Eigen::Index t = 0; t < k; ++t) {
    double mean = 0.0;
    for (NodeId v : members) mean += x(v, t);
    mean /= m;
    double var = 0.0;
    for (NodeId v : members) {
      const double dlt = x(v, t) - mean;
      var += dlt * dlt;
    }
    total += var / (m - 1.0);
  }
  return total / static_cast<double>(k);
}

inline std::vector<Candidate> enumerate_candidates(const Graph& g, VariationFamily family,
                                                   std::int64_t clique_cap, bool& cap_hit) {
  std::vector<Candidate> out;
  switch (family) {
    case VariationFamily::kNeighborhood: {
      for (NodeId v = 0; v < g.num_nodes(); ++v) {
        auto nb = g.neighbors(v);
        if (nb.empty()) continue;
        Candidate c;
        c.members.reserve(nb.size() + 1);
        c.members.assign(nb.begin(), nb.end());
        c.members.insert(std::lower_bound(c.members.begin(), c.members.end(), v), v);
        out.push_back(std::move(c));
      }
      break;
    }
    case VariationFamily::kClique: {
      std::vector<std::vector<NodeId>> cliques;
      cap_hit = BronKerbosch(g, clique_cap).run(cliques) || cap_hit;
      out.reserve(cliques.size());
      for (auto& q : cliques) out.push_back({std::move(q), 0.0});
      break;
    }
    case VariationFamily::kEdge: {
      out.reserve(g.edges().size());
      for (const EdgeRef& e : g.edges()) out.push_back({{e.u, e.v}, 0.0});
      break;
    }
  }
  return out;
}

/// Keeps the `keep` members whose first-test-vector values sit closest to
/// the set mean, so a truncated contraction still merges the most similar
/// nodes. Ties go to the smaller node ID.
inline std::vector<NodeId> truncate_candidate(const std::vector<NodeId>& members,
                                              const Eigen::MatrixXd& x, std::size_t keep) {
  double mean = 0.0;
  for (NodeId v : members) mean += x(v, 0);
  mean /= static_cast<double>(members.size());
  std::vector<NodeId> order = members;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    const double da = std::abs(x(a, 0) - mean);
    const double db = std::abs(x(b, 0) - mean);
    return da != db ? da < db : a < b;
  });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace detail

/// Greedy local-variation coarsening. Enumerates candidate sets per family
/// (vertex neighborhoods, maximal cliques, or edges), scores each by the
/// variation cost of its contraction under Jacobi-smoothed test vectors,
/// and contracts cheapest-first until the cluster count reaches target_n.
inline Partition partition_variation(const Graph& g, VariationFamily family, NodeId target_n,
                                     const VariationOptions& opts = {},
                                     VariationDiagnostics* diag = nullptr) {
  if (target_n < 1 || target_n > g.num_nodes()) {
    throw ArgumentError("partition_variation: target_n " + std::to_string(target_n) + " out of range [1," +
                        std::to_string(g.num_nodes()) + "]");
  }
  VariationDiagnostics local;
  ContractionState state(g);
  while (state.cluster_count() > target_n) {
    const Graph& cur = state.graph();
    Eigen::MatrixXd x = jacobi_smooth(cur, opts.test_vectors, opts.relaxation_sweeps,
                                      derive_seed(opts.seed, "variation", static_cast<std::uint64_t>(local.levels)));
    center_and_normalize_columns(x);
    std::vector<detail::Candidate> candidates =
        detail::enumerate_candidates(cur, family, opts.max_cliques, local.clique_cap_hit);
    for (auto& c : candidates) c.cost = detail::variation_cost(c.members, x);
    std::sort(candidates.begin(), candidates.end(), [](const detail::Candidate& a, const detail::Candidate& b) {
      if (a.cost != b.cost) return a.cost < b.cost;
      return a.members < b.members;
    });

    std::vector<bool> used(static_cast<std::size_t>(cur.num_nodes()), false);
    std::vector<std::vector<NodeId>> groups;
    NodeId remaining = cur.num_nodes();
    for (const auto& cand : candidates) {
      if (remaining <= target_n) break;
      bool blocked = false;
      for (NodeId v : cand.members) {
        if (used[static_cast<std::size_t>(v)]) {
          blocked = true;
          break;
        }
      }
      if (blocked) continue;
      const NodeId budget = remaining - target_n;
      std::vector<NodeId> members = cand.members;
      if (static_cast<NodeId>(members.size()) - 1 > budget) {
        members = detail::truncate_candidate(members, x, static_cast<std::size_t>(budget) + 1);
      }
      for (NodeId v : members) used[static_cast<std::size_t>(v)] = true;
      remaining -= static_cast<NodeId>(members.size()) - 1;
      groups.push_back(std::move(members));
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
