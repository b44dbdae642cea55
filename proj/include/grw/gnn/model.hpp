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
#include <string>
#include <vector>

#include "grw/errors.hpp"
#include "grw/rng.hpp"

namespace grw {

enum class GnnKind { kGcn, kSage, kGat };

inline const char* to_string(GnnKind k) {
  switch (k) {
    case GnnKind::kGcn: return "gcn";
    case GnnKind::kSage: return "sage";
    case GnnKind::kGat: return "gat";
  }
  return "?";
}

inline GnnKind gnn_kind_from_string(const std::string& s) {
  if (s == "gcn") return GnnKind::kGcn;
  if (s == "sage") return GnnKind::kSage;
  if (s == "gat") return GnnKind::kGat;
  throw ArgumentError("unknown GNN architecture: " + s + " (expected gcn|sage|gat)");
}

/// Two-layer network shape. `heads` only matters for GAT (first layer).
struct Architecture {
  GnnKind kind = GnnKind::kGcn;
  int hidden_dim = 64;
  int heads = 1;
  double dropout = 0.5;

  void validate() const {
    if (hidden_dim < 1) throw ArgumentError("architecture: hidden_dim must be >= 1");
    if (heads < 1) throw ArgumentError("architecture: heads must be >= 1");
    if (dropout < 0.0 || dropout >= 1.0) throw ArgumentError("architecture: dropout must lie in [0,1)");
  }
};

struct TrainConfig {
  int epochs = 200;
  double learning_rate = 0.01;
  double weight_decay = 5e-4;
  int early_stop_patience = 30;
  RngSeed seed = 0;

  void validate() const {
    if (learning_rate <= 0.0) throw ArgumentError("train: learning_rate must be positive");
    if (epochs < 1) throw ArgumentError("train: epochs must be >= 1");
  }
};

/// Layer weights plus Adam state. Weight layout by architecture:
///   GCN:  w = {W0 (d x h), W1 (h x K)}
///   SAGE: w = {Wself0, Wnbr0 (d x h), Wself1, Wnbr1 (h x K)}
///   GAT:  w = {W0_head0..W0_head{H-1} (d x h), W1 (H*h x K)},
///         a = {a0_head0..a0_head{H-1} (2h), a1 (2K)}
struct ModelParams {
  Architecture arch;
  int input_dim = 0;
  int num_classes = 0;
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> a;
  std::vector<Eigen::MatrixXd> adam_m_w, adam_v_w;
  std::vector<Eigen::VectorXd> adam_m_a, adam_v_a;
  std::int64_t step = 0;

  bool finite() const {
    for (const auto& mat : w) {
      if (!mat.allFinite()) return false;
    }
    for (const auto& vec : a) {
      if (!vec.allFinite()) return false;
    }
    return true;
  }
};

/// Gradients in the same layout as the parameters they correspond to.
struct Gradients {
  std::vector<Eigen::MatrixXd> w;
  std::vector<Eigen::VectorXd> a;

  static Gradients zeros_like(const ModelParams& p) {
    Gradients g;
    for (const auto& mat : p.w) g.w.push_back(Eigen::MatrixXd::Zero(mat.rows(), mat.cols()));
    for (const auto& vec : p.a) g.a.push_back(Eigen::VectorXd::Zero(vec.size()));
    return g;
  }
};

namespace detail {

inline Eigen::MatrixXd glorot_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-limit, limit);
  }
  return m;
}

inline Eigen::VectorXd glorot_vector(Eigen::Index size, Rng& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(size + 1));
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) v[i] = rng.uniform(-limit, limit);
  return v;
}

}  // namespace detail

/// Glorot-uniform initialization, deterministic under seed.
inline ModelParams init_model(const Architecture& arch, int input_dim, int num_classes, RngSeed seed) {
  arch.validate();
  if (input_dim < 1 || num_classes < 1) throw ArgumentError("init_model: dims must be >= 1");
  ModelParams p;
  p.arch = arch;
  p.input_dim = input_dim;
  p.num_classes = num_classes;
  Rng rng(derive_seed(seed, "init"));
  const int h = arch.hidden_dim;
  switch (arch.kind) {
    case GnnKind::kGcn:
      p.w.push_back(detail::glorot_matrix(input_dim, h, rng));
      p.w.push_back(detail::glorot_matrix(h, num_classes, rng));
      break;
    case GnnKind::kSage:
      p.w.push_back(detail::glorot_matrix(input_dim, h, rng));
      p.w.push_back(detail::glorot_matrix(input_dim, h, rng));
      p.w.push_back(detail::glorot_matrix(h, num_classes, rng));
      p.w.push_back(detail::glorot_matrix(h, num_classes, rng));
      break;
    case GnnKind::kGat:
      for (int head = 0; head < arch.heads; ++head) p.w.push_back(detail::glorot_matrix(input_dim, h, rng));
      p.w.push_back(detail::glorot_matrix(static_cast<Eigen::Index>(arch.heads) * h, num_classes, rng));
      for (int head = 0; head < arch.heads; ++head) p.a.push_back(detail::glorot_vector(2 * h, rng));
      p.a.push_back(detail::glorot_vector(2 * num_classes, rng));
      break;
  }
  for (const auto& mat : p.w) {
    p.adam_m_w.push_back(Eigen::MatrixXd::Zero(mat.rows(), mat.cols()));
    p.adam_v_w.push_back(Eigen::MatrixXd::Zero(mat.rows(), mat.cols()));
  }
  for (const auto& vec : p.a) {
    p.adam_m_a.push_back(Eigen::VectorXd::Zero(vec.size()));
    p.adam_v_a.push_back(Eigen::VectorXd::Zero(vec.size()));
  }
  return p;
}

/// One Adam update (beta1=0.9, beta2=0.999, eps=1e-8).
inline void adam_step(ModelParams& p, const Gradients& g, double lr) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  ++p.step;
  const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(p.step));
  const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(p.step));
  for (std::size_t i = 0; i < p.w.size(); ++i) {
    p.adam_m_w[i] = kBeta1 * p.adam_m_w[i] + (1.0 - kBeta1) * g.w[i];
    p.adam_v_w[i] = kBeta2 * p.adam_v_w[i] + (1.0 - kBeta2) * g.w[i].cwiseProduct(g.w[i]);
    p.w[i] -= lr * (p.adam_m_w[i] / bc1).cwiseQuotient(((p.adam_v_w[i] / bc2).cwiseSqrt().array() + kEps).matrix());
  }
  for (std::size_t i = 0; i < p.a.size(); ++i) {
    p.adam_m_a[i] = kBeta1 * p.adam_m_a[i] + (1.0 - kBeta1) * g.a[i];
    p.adam_v_a[i] = kBeta2 * p.adam_v_a[i] + (1.0 - kBeta2) * g.a[i].cwiseProduct(g.a[i]);
    p.a[i] -= lr * (p.adam_m_a[i] / bc1).cwiseQuotient(((p.adam_v_a[i] / bc2).cwiseSqrt().array() + kEps).matrix());
  }
}

}  // namespace grw
