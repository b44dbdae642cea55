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
#include <cmath>
#include <vector>

#include "grw/dataset.hpp"
#include "grw/graph.hpp"
#include "grw/rng.hpp"

namespace grw::gnn {

/// Symmetric normalized adjacency for GCN propagation:
/// A_hat = D~^{-1/2} (A + S) D~^{-1/2}, where S is a diagonal of per-node
/// self-loop weights. The self-loop weight equals the node's mean incident
/// edge weight (1 for isolated nodes) so that uniformly rescaling all edge
/// weights leaves A_hat unchanged; on unweighted graphs this is the usual
/// A + I.
class NormAdj {
 public:
  explicit NormAdj(const Graph& g) : g_(&g) {
    const NodeId n = g.num_nodes();
    inv_sqrt_deg_.resize(static_cast<std::size_t>(n));
    self_.resize(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
      const double wdeg = g.weighted_degree(v);
      const NodeId deg = g.degree(v);
      const double self_w = deg > 0 ? wdeg / static_cast<double>(deg) : 1.0;
      const double total = wdeg + self_w;
      inv_sqrt_deg_[static_cast<std::size_t>(v)] = 1.0 / std::sqrt(total);
      self_[static_cast<std::size_t>(v)] = self_w;
    }
  }

  /// out = A_hat * x. A_hat is symmetric, so this also applies the adjoint.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
    const NodeId n = g_->num_nodes();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, x.cols());
    for (NodeId v = 0; v < n; ++v) {
      const double dv = inv_sqrt_deg_[static_cast<std::size_t>(v)];
      out.row(v) += (self_[static_cast<std::size_t>(v)] * dv * dv) * x.row(v);
      auto nb = g_->neighbors(v);
      auto wt = g_->neighbor_weights(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        out.row(v) += (wt[i] * dv * inv_sqrt_deg_[static_cast<std::size_t>(nb[i])]) * x.row(nb[i]);
      }
    }
    return out;
  }

 private:
  const Graph* g_;
  std::vector<double> inv_sqrt_deg_;
  std::vector<double> self_;
};

/// GraphSAGE mean aggregator. In eval mode every neighbor contributes
/// 1/deg; in train mode a fixed-size sample of 10 neighbors is drawn per
/// node (without replacement when deg >= 10, with replacement otherwise)
/// and contributes count/10. Edge weights are not used.
class SageAggregator {
 public:
  static constexpr int kSampleSize = 10;

  SageAggregator(const Graph& g, bool sampled, RngSeed seed) : n_(g.num_nodes()) {
    offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<std::vector<std::pair<NodeId, double>>> rows(static_cast<std::size_t>(n_));
    Rng rng(seed);
    for (NodeId v = 0; v < n_; ++v) {
      auto nb = g.neighbors(v);
      if (nb.empty()) continue;
      auto& row = rows[static_cast<std::size_t>(v)];
      if (!sampled) {
        const double coeff = 1.0 / static_cast<double>(nb.size());
        for (NodeId u : nb) row.emplace_back(u, coeff);
      } else if (nb.size() >= kSampleSize) {
        for (std::size_t pick : rng.sample_indices(nb.size(), kSampleSize)) {
          row.emplace_back(nb[pick], 1.0 / kSampleSize);
        }
      } else {
        std::vector<int> count(nb.size(), 0);
        for (int s = 0; s < kSampleSize; ++s) ++count[rng.index(nb.size())];
        for (std::size_t i = 0; i < nb.size(); ++i) {
          if (count[i] > 0) row.emplace_back(nb[i], static_cast<double>(count[i]) / kSampleSize);
        }
      }
    }
    for (NodeId v = 0; v < n_; ++v) offsets_[static_cast<std::size_t>(v) + 1] = offsets_[static_cast<std::size_t>(v)] + static_cast<std::int64_t>(rows[static_cast<std::size_t>(v)].size());
    cols_.reserve(static_cast<std::size_t>(offsets_.back()));
    vals_.reserve(static_cast<std::size_t>(offsets_.back()));
    for (const auto& row : rows) {
      for (auto [u, c] : row) {
        cols_.push_back(u);
        vals_.push_back(c);
      }
    }
  }

  /// out = S * x.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, x.cols());
    for (NodeId v = 0; v < n_; ++v) {
      for (std::int64_t i = offsets_[static_cast<std::size_t>(v)]; i < offsets_[static_cast<std::size_t>(v) + 1]; ++i) {
        out.row(v) += vals_[static_cast<std::size_t>(i)] * x.row(cols_[static_cast<std::size_t>(i)]);
      }
    }
    return out;
  }

  /// out = S^T * x.
  Eigen::MatrixXd apply_adjoint(const Eigen::MatrixXd& x) const {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_, x.cols());
    for (NodeId v = 0; v < n_; ++v) {
      for (std::int64_t i = offsets_[static_cast<std::size_t>(v)]; i < offsets_[static_cast<std::size_t>(v) + 1]; ++i) {
        out.row(cols_[static_cast<std::size_t>(i)]) += vals_[static_cast<std::size_t>(i)] * x.row(v);
      }
    }
    return out;
  }

 private:
  NodeId n_;
  std::vector<std::int64_t> offsets_;
  std::vector<NodeId> cols_;
  std::vector<double> vals_;
};

/// Inverted dropout mask with scale 1/(1-rate); empty when inactive.
struct DropoutMask {
  Eigen::MatrixXd scale;  // 0 or 1/(1-rate) per entry
  bool active = false;

  static DropoutMask make(Eigen::Index rows, Eigen::Index cols, double rate, bool train_mode, Rng& rng) {
    DropoutMask m;
    if (!train_mode || rate <= 0.0) return m;
    m.active = true;
    m.scale.resize(rows, cols);
    const double keep = 1.0 - rate;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < cols; ++j) m.scale(i, j) = rng.uniform() < keep ? 1.0 / keep : 0.0;
    }
    return m;
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const { return active ? x.cwiseProduct(scale) : x; }
};

}  // namespace grw::gnn
