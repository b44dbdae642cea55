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
#include <algorithm>
#include <cmath>
#include <vector>

#include "grw/dataset.hpp"
#include "grw/graph.hpp"
#include "grw/rng.hpp"

namespace grw {

/// Dense graph Laplacian L = D - W. Symmetric, rows sum to zero, PSD.
inline Eigen::MatrixXd laplacian_dense(const Graph& g) {
  const NodeId n = g.num_nodes();
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
  for (const EdgeRef& e : g.edges()) {
    L(e.u, e.v) -= e.w;
    L(e.v, e.u) -= e.w;
    L(e.u, e.u) += e.w;
    L(e.v, e.v) += e.w;
  }
  return L;
}

/// y = L x without materializing L.
inline void laplacian_apply(const Graph& g, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const NodeId n = g.num_nodes();
  y.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    auto w = g.neighbor_weights(v);
    double acc = 0.0;
    double deg = 0.0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      acc += w[i] * x[nb[i]];
      deg += w[i];
    }
    y[v] = deg * x[v] - acc;
  }
}

/// Edge density of the subgraph induced on v's closed 2-hop neighborhood
/// (v, its neighbors is and their neighbors). Returns |E_sub| / (k choose 2),
/// or 0 when the neighborhood has at most one node.
inline double two_hop_density(const Graph& g, NodeId v) {
  if (v < 0 || v >= g.num_nodes()) {
    throw ArgumentError("two_hop_density: node " + std::to_string(v) + " out of range");
  }
  std::vector<NodeId> hood{v};
  for (NodeId u : g.neighbors(v)) hood.push_back(u);
  const std::size_t one_hop_end = hood.size();
  for (std::size_t i = 1; i < one_hop_end; ++i) {
    for (NodeId w : g.neighbors(hood[i])) hood.push_back(w);
  }
  std::sort(hood.begin(), hood.end());
  hood.erase(std::unique(hood.begin(), hood.end()), hood.end());
  const std::size_t k = hood.size();
  if (k <= 1) return 0.0;
  std::int64_t edge_count = 0;
  for (NodeId u : hood) {
    auto nb = g.neighbors(u);
    for (NodeId w : nb) {
      if (w > u && std::binary_search(hood.begin(), hood.end(), w)) ++edge_count;
    }
  }
  const double pairs = 0.5 * static_cast<double>(k) * static_cast<double>(k - 1);
  return static_cast<double>(edge_count) / pairs;
}

/// k random test vectors smoothed by damped Jacobi sweeps on L x = 0
/// (x_i <- (1-w) x_i + w * weighted neighbor mean). Columns are the vectors.
inline Eigen::MatrixXd jacobi_smooth(const Graph& g, int k, int sweeps, RngSeed seed,
                                     double omega = 0.5) {
  if (k < 1) throw ArgumentError("jacobi_smooth: need at least one test vector");
  const NodeId n = g.num_nodes();
  Eigen::MatrixXd x(n, k);
  Rng rng(seed);
  for (int j = 0; j < k; ++j) {
    for (NodeId i = 0; i < n; ++i) x(i, j) = rng.uniform(-0.5, 0.5);
  }
  Eigen::MatrixXd next(n, k);
  for (int s = 0; s < sweeps; ++s) {
    for (NodeId v = 0; v < n; ++v) {
      auto nb = g.neighbors(v);
      auto w = g.neighbor_weights(v);
      double deg = 0.0;
      for (double wi : w) deg += wi;
      if (deg <= 0.0) {
        next.row(v) = x.row(v);
        continue;
      }
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(k);
      for (std::size_t i = 0; i < nb.size(); ++i) mean += w[i] * x.row(nb[i]);
      next.row(v) = (1.0 - omega) * x.row(v) + (omega / deg) * mean;
    }
    x.swap(next);
  }
  return x;
}

/// Centers every column and scales it to unit norm. Applied to smoothed
/// test vectors so that late relaxation levels keep contrast: the residual
/// after many sweeps aligns with the slowest eigenmode, whose magnitude
/// would otherwise vanish into rounding noise.
inline void center_and_normalize_columns(Eigen::MatrixXd& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    x.col(j).array() -= x.col(j).mean();
    const double norm = x.col(j).norm();
    if (norm > 1e-300) x.col(j) /= norm;
  }
}

/// Dominant eigenvector of the Laplacian by power iteration. The sign is
/// fixed so that the vector has at least as many positive entries as
/// negative ones (ties broken toward a positive first nonzero entry).
inline Eigen::VectorXd laplacian_top_eigenvector(const Graph& g, RngSeed seed, int max_iters = 500,
                                                 double tol = 1e-12) {
  const NodeId n = g.num_nodes();
  if (n == 0) return {};
  Rng rng(seed);
  Eigen::VectorXd v(n);
  for (NodeId i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  v.normalize();
  Eigen::VectorXd next(n);
  for (int it = 0; it < max_iters; ++it) {
    laplacian_apply(g, v, next);
    const double norm = next.norm();
    if (norm <= 0.0) break;  // L == 0 (edgeless graph)
    next /= norm;
    const double delta = std::min((next - v).norm(), (next + v).norm());
    v = next;
    if (delta < tol) break;
  }
  int pos = 0;
  int neg = 0;
  for (NodeId i = 0; i < n; ++i) {
    if (v[i] > 0.0) ++pos;
    else if (v[i] < 0.0) ++neg;
  }
  bool flip = neg > pos;
  if (pos == neg) {
    for (NodeId i = 0; i < n; ++i) {
      if (v[i] != 0.0) {
        flip = v[i] < 0.0;
        break;
      }
    }
  }
  if (flip) v = -v;
  return v;
}

}  // namespace grw
