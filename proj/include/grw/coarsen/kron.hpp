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

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include "grw/coarsen/contract.hpp"
#include "grw/graph.hpp"
#include "grw/partition.hpp"
#include "grw/spectral.hpp"

namespace grw {

struct KronOptions {
  /// Added to the diagonal of L_RR before the solve. Zero means "no
  /// regularization": a singular L_RR then raises NumericError.
  double regularization = 1e-9;
  RngSeed seed = 0;
  /// The Schur-complement consistency check is dense; skip it on levels
  /// larger than this.
  NodeId schur_check_max_nodes = 4000;
};

struct KronDiagnostics {
  bool stalled = false;
  int levels = 0;
  /// Largest relative Frobenius deviation between the framework coarse
  /// Laplacian and the Schur complement across checked levels. The two are
  /// different reductions by construction; this is a diagnostic, not an
  /// error signal.
  double max_schur_deviation = 0.0;
  /// Number of levels where the dense check ran.
  int schur_checks = 0;
};

/// Kron reduction of the Laplacian onto `selected` (ascending node IDs):
/// L_c = L_SS - L_SR (L_RR + reg I)^{-1} L_RS. Throws NumericError when the
/// regularized L_RR is singular.
inline Eigen::MatrixXd kron_schur_complement(const Graph& g, const std::vector<NodeId>& selected,
                                             double regularization) {
  const NodeId n = g.num_nodes();
  std::vector<bool> in_s(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (selected[i] < 0 || selected[i] >= n) throw ArgumentError("kron_schur_complement: selected node out of range");
    if (i > 0 && selected[i] <= selected[i - 1]) throw ArgumentError("kron_schur_complement: selection not strictly ascending");
    in_s[static_cast<std::size_t>(selected[i])] = true;
  }
  std::vector<NodeId> rest;
  rest.reserve(static_cast<std::size_t>(n) - selected.size());
  for (NodeId v = 0; v < n; ++v) {
    if (!in_s[static_cast<std::size_t>(v)]) rest.push_back(v);
  }
  const Eigen::MatrixXd L = laplacian_dense(g);
  const auto ns = static_cast<Eigen::Index>(selected.size());
  const auto nr = static_cast<Eigen::Index>(rest.size());
  Eigen::MatrixXd lss(ns, ns);
  for (Eigen::Index i = 0; i < ns; ++i) {
    for (Eigen::Index j = 0; j < ns; ++j) lss(i, j) = L(selected[static_cast<std::size_t>(i)], selected[static_cast<std::size_t>(j)]);
  }
  if (nr == 0) return lss;
  Eigen::MatrixXd lsr(ns, nr);
  Eigen::MatrixXd lrr(nr, nr);
  for (Eigen::Index i = 0; i < ns; ++i) {
    for (Eigen::Index j = 0; j < nr; ++j) lsr(i, j) = L(selected[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);
  }
  for (Eigen::Index i = 0; i < nr; ++i) {
    for (Eigen::Index j = 0; j < nr; ++j) lrr(i, j) = L(rest[static_cast<std::size_t>(i)], rest[static_cast<std::size_t>(j)]);
  }
  lrr.diagonal().array() += regularization;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(lrr);
  const Eigen::VectorXd d = ldlt.vectorD();
  const double dmax = std::max(d.cwiseAbs().maxCoeff(), 1.0);
  if (ldlt.info() != Eigen::Success || d.cwiseAbs().minCoeff() < 1e-12 * dmax) {
    throw NumericError("kron reduction: L_RR is singular (regularization=" + std::to_string(regularization) + ")");
  }
  return lss - lsr * ldlt.solve(lsr.transpose());
}

namespace detail {

/// Assigns every unselected node to a selected one: first choice is the
/// selected neighbor of maximum connection weight; nodes without one follow
/// the BFS-nearest selected node. Unreachable nodes keep their own cluster.
inline std::vector<NodeId> kron_assign(const Graph& g, const std::vector<bool>& in_s) {
  const NodeId n = g.num_nodes();
  constexpr NodeId kInf = std::numeric_limits<NodeId>::max();
  std::vector<NodeId> dist(static_cast<std::size_t>(n), kInf);
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v) {
    if (in_s[static_cast<std::size_t>(v)]) {
      dist[static_cast<std::size_t>(v)] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    for (NodeId u : g.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] == kInf) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<NodeId> cluster(static_cast<std::size_t>(n), -1);
  for (NodeId v = 0; v < n; ++v) {
    if (in_s[static_cast<std::size_t>(v)]) cluster[static_cast<std::size_t>(v)] = v;
  }
  // Resolve in ascending BFS distance so a node's parent is already placed.
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) {
    if (!in_s[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] != kInf) order.push_back(v);
  }
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    if (dist[static_cast<std::size_t>(a)] != dist[static_cast<std::size_t>(b)]) {
      return dist[static_cast<std::size_t>(a)] < dist[static_cast<std::size_t>(b)];
    }
    return a < b;
  });
  for (NodeId v : order) {
    auto nb = g.neighbors(v);
    auto wt = g.neighbor_weights(v);
    NodeId best = -1;
    double best_w = -1.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (dist[static_cast<std::size_t>(nb[i])] + 1 != dist[static_cast<std::size_t>(v)]) continue;
      if (wt[i] > best_w || (wt[i] == best_w && nb[i] < best)) {
        best = nb[i];
        best_w = wt[i];
      }
    }
    cluster[static_cast<std::size_t>(v)] = cluster[static_cast<std::size_t>(best)];
  }
  for (NodeId v = 0; v < n; ++v) {
    if (cluster[static_cast<std::size_t>(v)] < 0) cluster[static_cast<std::size_t>(v)] = v;  // unreachable
  }
  return cluster;
}

}  // namespace detail

/// Kron coarsening: per level, select the nodes with positive entries in
/// the Laplacian's dominant eigenvector (or the target_n largest entries
/// when the positive set would overshoot), fold every unselected node into
/// its strongest selected neighbor, and cross-check the framework coarse
/// Laplacian against the Schur complement.
inline Partition partition_kron(const Graph& g, NodeId target_n, const KronOptions& opts = {},
                                KronDiagnostics* diag = nullptr) {
  if (target_n < 1 || target_n > g.num_nodes()) {
    throw ArgumentError("partition_kron: target_n " + std::to_string(target_n) + " out of range [1," +
                        std::to_string(g.num_nodes()) + "]");
  }
  KronDiagnostics local;
  ContractionState state(g);
  while (state.cluster_count() > target_n) {
    const Graph& cur = state.graph();
    const NodeId n = cur.num_nodes();
    const Eigen::VectorXd v =
        laplacian_top_eigenvector(cur, derive_seed(opts.seed, "kron", static_cast<std::uint64_t>(local.levels)));
    std::vector<NodeId> selected;
    for (NodeId i = 0; i < n; ++i) {
      if (v[i] > 0.0) selected.push_back(i);
    }
    if (static_cast<NodeId>(selected.size()) < target_n) {
      // The positive set would overshoot the target; take the target_n
      // largest eigenvector entries instead so the level lands exactly.
      std::vector<NodeId> order(static_cast<std::size_t>(n));
      for (NodeId i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
      std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (v[a] != v[b]) return v[a] > v[b];
        return a < b;
      });
      selected.assign(order.begin(), order.begin() + target_n);
      std::sort(selected.begin(), selected.end());
    }
    if (selected.empty() || static_cast<NodeId>(selected.size()) >= n) {
      local.stalled = true;
      break;
    }
    std::vector<bool> in_s(static_cast<std::size_t>(n), false);
    for (NodeId s : selected) in_s[static_cast<std::size_t>(s)] = true;
    const std::vector<NodeId> cluster_of = detail::kron_assign(cur, in_s);
    Partition level = Partition::from_assignment(cluster_of);
    if (level.num_clusters() >= n) {
      local.stalled = true;
      break;
    }
    if (n <= opts.schur_check_max_nodes) {
      const Eigen::MatrixXd schur = kron_schur_complement(cur, selected, opts.regularization);
      // Reorder the framework coarse Laplacian to selected-node order: each
      // cluster contains exactly one selected node.
      const Graph coarse = build_coarse_graph(cur, level);
      const Eigen::MatrixXd lc = laplacian_dense(coarse);
      std::vector<NodeId> cluster_to_row(static_cast<std::size_t>(level.num_clusters()), -1);
      for (std::size_t i = 0; i < selected.size(); ++i) {
        cluster_to_row[static_cast<std::size_t>(level.assign[static_cast<std::size_t>(selected[i])])] =
            static_cast<NodeId>(i);
      }
      bool comparable = true;
      for (NodeId r : cluster_to_row) comparable = comparable && r >= 0;
      if (comparable) {
        Eigen::MatrixXd lc_ordered(schur.rows(), schur.cols());
        for (Eigen::Index a = 0; a < lc.rows(); ++a) {
          for (Eigen::Index b = 0; b < lc.cols(); ++b) {
            lc_ordered(cluster_to_row[static_cast<std::size_t>(a)], cluster_to_row[static_cast<std::size_t>(b)]) =
                lc(a, b);
          }
        }
        const double denom = std::max(schur.norm(), 1e-12);
        local.max_schur_deviation = std::max(local.max_schur_deviation, (lc_ordered - schur).norm() / denom);
        ++local.schur_checks;
      }
    }
    std::vector<std::vector<NodeId>> groups(selected.size());
    std::vector<NodeId> rep_group(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < selected.size(); ++i) rep_group[static_cast<std::size_t>(selected[i])] = static_cast<NodeId>(i);
    for (NodeId u = 0; u < n; ++u) {
      const NodeId rep = cluster_of[static_cast<std::size_t>(u)];
      if (rep_group[static_cast<std::size_t>(rep)] >= 0) {
        groups[static_cast<std::size_t>(rep_group[static_cast<std::size_t>(rep)])].push_back(u);
      }
    }
    state.apply_level(groups);
    ++local.levels;
  }
  if (diag != nullptr) *diag = local;
  return state.finish();
}

}  // namespace grw
