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
#include <optional>
#include <variant>
#include <vector>

#include "grw/dataset.hpp"
#include "grw/gnn/model.hpp"
#include "grw/gnn/passes.hpp"
#include "grw/graph.hpp"
#include "grw/split.hpp"

namespace grw {

namespace gnn {

/// Type-erased forward evaluation holding the intermediates for backward.
class Pass {
 public:
  Pass(const ModelParams& p, const Graph& g, const Eigen::MatrixXd& x, bool train_mode, RngSeed seed) {
    switch (p.arch.kind) {
      case GnnKind::kGcn:
        impl_.emplace<GcnPass>(p, g, x, train_mode, seed);
        break;
      case GnnKind::kSage:
        impl_.emplace<SagePass>(p, g, x, train_mode, seed);
        break;
      case GnnKind::kGat:
        impl_.emplace<GatPass>(p, g, x, train_mode, seed);
        break;
    }
  }

  const Eigen::MatrixXd& logits() const {
    return std::visit([](const auto& pass) -> const Eigen::MatrixXd& { return pass.logits(); }, impl_);
  }

  /// Backpropagates an arbitrary logit gradient; accumulates parameter
  /// gradients and returns the input-feature gradient.
  Eigen::MatrixXd backward(const ModelParams& p, const Eigen::MatrixXd& dlogits, Gradients& grads) const {
    return std::visit([&](const auto& pass) { return pass.backward(p, dlogits, grads); }, impl_);
  }

 private:
  std::variant<std::monostate, GcnPass, SagePass, GatPass> impl_;
};

}  // namespace gnn

/// Logits (n x K) of the two-layer network. Eval mode (train_mode=false)
/// is dropout-free and uses full neighborhoods for SAGE.
inline Eigen::MatrixXd forward(const ModelParams& p, const Graph& g, const Features& x, bool train_mode,
                               RngSeed seed = 0) {
  if (x.rows() != g.num_nodes()) throw DimensionError("forward: feature rows != node count");
  if (static_cast<int>(x.cols()) != p.input_dim) throw DimensionError("forward: feature dim != model input dim");
  return gnn::Pass(p, g, x, train_mode, seed).logits();
}

namespace gnn {

/// Mean softmax cross-entropy over `mask`; writes the logit gradient
/// (softmax - onehot) / |mask| into dlogits rows.
inline double cross_entropy(const Eigen::MatrixXd& logits, const Labels& y, const std::vector<NodeId>& mask,
                            Eigen::MatrixXd* dlogits) {
  if (mask.empty()) throw ArgumentError("loss: empty node mask");
  if (dlogits != nullptr) *dlogits = Eigen::MatrixXd::Zero(logits.rows(), logits.cols());
  double total = 0.0;
  const double inv = 1.0 / static_cast<double>(mask.size());
  for (NodeId v : mask) {
    const auto row = logits.row(v);
    const double m = row.maxCoeff();
    const double lse = m + std::log((row.array() - m).exp().sum());
    const NodeId label = y.y[static_cast<std::size_t>(v)];
    total += lse - row[label];
    if (dlogits != nullptr) {
      dlogits->row(v) = ((row.array() - lse).exp()) * inv;
      (*dlogits)(v, label) -= inv;
    }
  }
  return total * inv;
}

}  // namespace gnn

/// Mean cross-entropy over the mask plus 0.5 * weight_decay * ||W||^2 over
/// every weight matrix and attention vector; gradients are the exact
/// analytic gradients of that loss. `seed` pins dropout masks and SAGE
/// neighbor sampling so a repeated call reproduces the same stochastic
/// network.
inline std::pair<double, Gradients> loss_and_grad(const ModelParams& p, const Graph& g, const Features& x,
                                                  const Labels& y, const std::vector<NodeId>& mask,
                                                  double weight_decay = 0.0, bool train_mode = true,
                                                  RngSeed seed = 0) {
  if (mask.empty()) throw ArgumentError("loss_and_grad: empty node mask");
  gnn::Pass pass(p, g, x, train_mode, seed);
  Eigen::MatrixXd dlogits;
  double loss = gnn::cross_entropy(pass.logits(), y, mask, &dlogits);
  Gradients grads = Gradients::zeros_like(p);
  pass.backward(p, dlogits, grads);
  if (weight_decay != 0.0) {
    for (std::size_t i = 0; i < p.w.size(); ++i) {
      loss += 0.5 * weight_decay * p.w[i].squaredNorm();
      grads.w[i] += weight_decay * p.w[i];
    }
    for (std::size_t i = 0; i < p.a.size(); ++i) {
      loss += 0.5 * weight_decay * p.a[i].squaredNorm();
      grads.a[i] += weight_decay * p.a[i];
    }
  }
  return {loss, std::move(grads)};
}

/// Gradient of sum_ij dlogits_ij * logits_ij with respect to the input
/// features. Used by the adaptive trigger generator.
inline Eigen::MatrixXd input_feature_grad(const ModelParams& p, const Graph& g, const Features& x,
                                          const Eigen::MatrixXd& dlogits, bool train_mode = false,
                                          RngSeed seed = 0) {
  gnn::Pass pass(p, g, x, train_mode, seed);
  Gradients scratch = Gradients::zeros_like(p);
  return pass.backward(p, dlogits, scratch);
}

/// Argmax prediction in eval mode; ties go to the smallest class.
inline std::vector<NodeId> predict(const ModelParams& p, const Graph& g, const Features& x,
                                   const std::vector<NodeId>& nodes) {
  const Eigen::MatrixXd logits = forward(p, g, x, /*train_mode=*/false);
  std::vector<NodeId> out;
  out.reserve(nodes.size());
  for (NodeId v : nodes) {
    if (v < 0 || v >= g.num_nodes()) throw ArgumentError("predict: node out of range");
    NodeId best = 0;
    for (NodeId c = 1; c < p.num_classes; ++c) {
      if (logits(v, c) > logits(v, best)) best = c;
    }
    out.push_back(best);
  }
  return out;
}

inline double accuracy(const ModelParams& p, const Graph& g, const Features& x, const Labels& y,
                       const std::vector<NodeId>& nodes) {
  if (nodes.empty()) throw MetricError("accuracy: empty node set");
  const std::vector<NodeId> pred = predict(p, g, x, nodes);
  std::int64_t hits = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (pred[i] == y.y[static_cast<std::size_t>(nodes[i])]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(nodes.size());
}

/// Full-batch Adam training with early stopping on validation accuracy.
/// Returns the parameters of the best validation epoch (ties keep the
/// earlier epoch). Deterministic under cfg.seed.
inline ModelParams train(const Graph& g, const Features& x, const Labels& y,
                         const std::vector<NodeId>& labeled_mask, const std::vector<NodeId>& val_mask,
                         const Architecture& arch, const TrainConfig& cfg) {
  cfg.validate();
  if (labeled_mask.empty()) throw ArgumentError("train: empty labeled mask");
  ModelParams params = init_model(arch, static_cast<int>(x.cols()), y.num_classes, cfg.seed);
  ModelParams best = params;
  double best_val = -1.0;
  int since_best = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    auto [loss, grads] = loss_and_grad(params, g, x, y, labeled_mask, cfg.weight_decay, /*train_mode=*/true,
                                       derive_seed(cfg.seed, "epoch", static_cast<std::uint64_t>(epoch)));
    if (!std::isfinite(loss)) {
      throw TrainError("training diverged: non-finite loss at epoch " + std::to_string(epoch));
    }
    adam_step(params, grads, cfg.learning_rate);
    if (val_mask.empty()) {
      best = params;
      continue;
    }
    const double val_acc = accuracy(params, g, x, y, val_mask);
    if (val_acc > best_val) {
      best_val = val_acc;
      best = params;
      since_best = 0;
    } else if (++since_best >= cfg.early_stop_patience) {
      break;
    }
  }
  return best;
}

/// Convenience overload training on a full graph with the standard split.
inline ModelParams train(const Graph& g, const Features& x, const Labels& y, const DatasetSplit& split,
                         const Architecture& arch, const TrainConfig& cfg) {
  return train(g, x, y, split.labeled_train, split.validation, arch, cfg);
}

}  // namespace grw
