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
#include <limits>
#include <vector>

#include "grw/gnn/model.hpp"
#include "grw/gnn/propagation.hpp"
#include "grw/graph.hpp"

namespace grw::gnn {

inline Eigen::MatrixXd relu(const Eigen::MatrixXd& x) { return x.cwiseMax(0.0); }

inline Eigen::MatrixXd relu_grad(const Eigen::MatrixXd& pre, const Eigen::MatrixXd& grad) {
  return (pre.array() > 0.0).select(grad, Eigen::MatrixXd::Zero(grad.rows(), grad.cols()));
}

/// Forward/backward state for one evaluation of a two-layer GNN. The
/// backward methods return the gradient with respect to the input features,
/// which the attack module uses for trigger synthesis.
class GcnPass {
 public:
  GcnPass(const ModelParams& p, const Graph& g, const Eigen::MatrixXd& x, bool train_mode, RngSeed seed)
      : adj_(g) {
    Rng rng(derive_seed(seed, "dropout"));
    in_mask_ = DropoutMask::make(x.rows(), x.cols(), p.arch.dropout, train_mode, rng);
    x0_ = in_mask_.apply(x);
    ax0_ = adj_.apply(x0_);
    z1_ = ax0_ * p.w[0];
    h1_ = relu(z1_);
    hid_mask_ = DropoutMask::make(h1_.rows(), h1_.cols(), p.arch.dropout, train_mode, rng);
    h1d_ = hid_mask_.apply(h1_);
    ah1_ = adj_.apply(h1d_);
    logits_ = ah1_ * p.w[1];
  }

  const Eigen::MatrixXd& logits() const { return logits_; }

  Eigen::MatrixXd backward(const ModelParams& p, const Eigen::MatrixXd& dlogits, Gradients& grads) const {
    grads.w[1] += ah1_.transpose() * dlogits;
    Eigen::MatrixXd u2 = adj_.apply(dlogits * p.w[1].transpose());
    Eigen::MatrixXd dz1 = relu_grad(z1_, hid_mask_.apply(u2));
    grads.w[0] += ax0_.transpose() * dz1;
    Eigen::MatrixXd dx0 = adj_.apply(dz1 * p.w[0].transpose());
    return in_mask_.apply(dx0);
  }

 private:
  NormAdj adj_;
  DropoutMask in_mask_, hid_mask_;
  Eigen::MatrixXd x0_, ax0_, z1_, h1_, h1d_, ah1_, logits_;
};

class SagePass {
 public:
  SagePass(const ModelParams& p, const Graph& g, const Eigen::MatrixXd& x, bool train_mode, RngSeed seed)
      : agg_(g, train_mode, derive_seed(seed, "sage-sample")) {
    Rng rng(derive_seed(seed, "dropout"));
    in_mask_ = DropoutMask::make(x.rows(), x.cols(), p.arch.dropout, train_mode, rng);
    x0_ = in_mask_.apply(x);
    n1_ = agg_.apply(x0_);
    z1_ = x0_ * p.w[0] + n1_ * p.w[1];
    h1_ = relu(z1_);
    hid_mask_ = DropoutMask::make(h1_.rows(), h1_.cols(), p.arch.dropout, train_mode, rng);
    h1d_ = hid_mask_.apply(h1_);
    n2_ = agg_.apply(h1d_);
    logits_ = h1d_ * p.w[2] + n2_ * p.w[3];
  }

  const Eigen::MatrixXd& logits() const { return logits_; }

  Eigen::MatrixXd backward(const ModelParams& p, const Eigen::MatrixXd& dlogits, Gradients& grads) const {
    grads.w[2] += h1d_.transpose() * dlogits;
    grads.w[3] += n2_.transpose() * dlogits;
    Eigen::MatrixXd dh1d = dlogits * p.w[2].transpose() + agg_.apply_adjoint(dlogits) * p.w[3].transpose();
    Eigen::MatrixXd dz1 = relu_grad(z1_, hid_mask_.apply(dh1d));
    grads.w[0] += x0_.transpose() * dz1;
    grads.w[1] += n1_.transpose() * dz1;
    Eigen::MatrixXd dx0 = dz1 * p.w[0].transpose() + agg_.apply_adjoint(dz1) * p.w[1].transpose();
    return in_mask_.apply(dx0);
  }

 private:
  SageAggregator agg_;
  DropoutMask in_mask_, hid_mask_;
  Eigen::MatrixXd x0_, n1_, z1_, h1_, h1d_, n2_, logits_;
};

namespace detail {

/// One GAT attention layer over N(i) + self, LeakyReLU(0.2) scoring.
/// Edge weights are not used; attention is structural.
struct GatLayer {
  // Per node i, entries [off[i], off[i+1]) list attended targets j; the
  // first entry is the self-loop.
  std::vector<std::int64_t> off;
  std::vector<NodeId> tgt;
  std::vector<double> alpha;
  std::vector<double> slope;  // LeakyReLU derivative at the raw score
  Eigen::MatrixXd p;          // X W (pre-attention projections)
  Eigen::MatrixXd out;

  void forward(const Graph& g, const Eigen::MatrixXd& x, const Eigen::MatrixXd& w,
               const Eigen::VectorXd& attn) {
    const NodeId n = g.num_nodes();
    const Eigen::Index f = w.cols();
    p = x * w;
    const Eigen::VectorXd a_src = attn.head(f);
    const Eigen::VectorXd a_dst = attn.tail(f);
    const Eigen::VectorXd s = p * a_src;
    const Eigen::VectorXd t = p * a_dst;
    off.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId i = 0; i < n; ++i) off[static_cast<std::size_t>(i) + 1] = off[static_cast<std::size_t>(i)] + 1 + g.degree(i);
    tgt.resize(static_cast<std::size_t>(off.back()));
    alpha.resize(tgt.size());
    slope.resize(tgt.size());
    out = Eigen::MatrixXd::Zero(n, f);
    for (NodeId i = 0; i < n; ++i) {
      const std::int64_t begin = off[static_cast<std::size_t>(i)];
      std::int64_t idx = begin;
      tgt[static_cast<std::size_t>(idx++)] = i;
      for (NodeId j : g.neighbors(i)) tgt[static_cast<std::size_t>(idx++)] = j;
      const std::int64_t end = idx;
      double max_e = -std::numeric_limits<double>::infinity();
      for (std::int64_t k = begin; k < end; ++k) {
        const double raw = s[i] + t[tgt[static_cast<std::size_t>(k)]];
        const double act = raw > 0.0 ? raw : 0.2 * raw;
        slope[static_cast<std::size_t>(k)] = raw > 0.0 ? 1.0 : 0.2;
        alpha[static_cast<std::size_t>(k)] = act;  // raw activation for now
        max_e = std::max(max_e, act);
      }
      double denom = 0.0;
      for (std::int64_t k = begin; k < end; ++k) {
        alpha[static_cast<std::size_t>(k)] = std::exp(alpha[static_cast<std::size_t>(k)] - max_e);
        denom += alpha[static_cast<std::size_t>(k)];
      }
      for (std::int64_t k = begin; k < end; ++k) {
        alpha[static_cast<std::size_t>(k)] /= denom;
        out.row(i) += alpha[static_cast<std::size_t>(k)] * p.row(tgt[static_cast<std::size_t>(k)]);
      }
    }
  }

  /// Accumulates dW and da; returns the gradient w.r.t. the layer input.
  Eigen::MatrixXd backward(const Graph& g, const Eigen::MatrixXd& x, const Eigen::MatrixXd& w,
                           const Eigen::VectorXd& attn, const Eigen::MatrixXd& dout,
                           Eigen::MatrixXd& dw, Eigen::VectorXd& da) const {
    const NodeId n = g.num_nodes();
    const Eigen::Index f = w.cols();
    const Eigen::VectorXd a_src = attn.head(f);
    const Eigen::VectorXd a_dst = attn.tail(f);
    Eigen::MatrixXd dp = Eigen::MatrixXd::Zero(n, f);
    Eigen::VectorXd ds = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd dt = Eigen::VectorXd::Zero(n);
    for (NodeId i = 0; i < n; ++i) {
      const std::int64_t begin = off[static_cast<std::size_t>(i)];
      const std::int64_t end = off[static_cast<std::size_t>(i) + 1];
      // dalpha_ij = dout_i . p_j; softmax jacobian turns it into de.
      double inner = 0.0;
      for (std::int64_t k = begin; k < end; ++k) {
        inner += alpha[static_cast<std::size_t>(k)] * dout.row(i).dot(p.row(tgt[static_cast<std::size_t>(k)]));
      }
      for (std::int64_t k = begin; k < end; ++k) {
        const NodeId j = tgt[static_cast<std::size_t>(k)];
        const double dalpha = dout.row(i).dot(p.row(j));
        const double de = alpha[static_cast<std::size_t>(k)] * (dalpha - inner);
        const double dz = de * slope[static_cast<std::size_t>(k)];
        ds[i] += dz;
        dt[j] += dz;
        dp.row(j) += alpha[static_cast<std::size_t>(k)] * dout.row(i);
      }
    }
    da.head(f) += p.transpose() * ds;
    da.tail(f) += p.transpose() * dt;
    dp += ds * a_src.transpose() + dt * a_dst.transpose();
    dw += x.transpose() * dp;
    return dp * w.transpose();
  }
};

}  // namespace detail

class GatPass {
 public:
  GatPass(const ModelParams& p, const Graph& g, const Eigen::MatrixXd& x, bool train_mode, RngSeed seed)
      : g_(&g), heads_(p.arch.heads) {
    Rng rng(derive_seed(seed, "dropout"));
    in_mask_ = DropoutMask::make(x.rows(), x.cols(), p.arch.dropout, train_mode, rng);
    x0_ = in_mask_.apply(x);
    const NodeId n = g.num_nodes();
    const int h = p.arch.hidden_dim;
    layer0_.resize(static_cast<std::size_t>(heads_));
    z1_.resize(n, static_cast<Eigen::Index>(heads_) * h);
    for (int head = 0; head < heads_; ++head) {
      layer0_[static_cast<std::size_t>(head)].forward(g, x0_, p.w[static_cast<std::size_t>(head)],
                                                      p.a[static_cast<std::size_t>(head)]);
      z1_.middleCols(static_cast<Eigen::Index>(head) * h, h) = layer0_[static_cast<std::size_t>(head)].out;
    }
    h1_ = relu(z1_);
    hid_mask_ = DropoutMask::make(h1_.rows(), h1_.cols(), p.arch.dropout, train_mode, rng);
    h1d_ = hid_mask_.apply(h1_);
    layer1_.forward(g, h1d_, p.w[static_cast<std::size_t>(heads_)], p.a[static_cast<std::size_t>(heads_)]);
  }

  const Eigen::MatrixXd& logits() const { return layer1_.out; }

  Eigen::MatrixXd backward(const ModelParams& p, const Eigen::MatrixXd& dlogits, Gradients& grads) const {
    const int h = p.arch.hidden_dim;
    Eigen::MatrixXd dh1d = layer1_.backward(*g_, h1d_, p.w[static_cast<std::size_t>(heads_)],
                                            p.a[static_cast<std::size_t>(heads_)], dlogits,
                                            grads.w[static_cast<std::size_t>(heads_)],
                                            grads.a[static_cast<std::size_t>(heads_)]);
    Eigen::MatrixXd dz1 = relu_grad(z1_, hid_mask_.apply(dh1d));
    Eigen::MatrixXd dx0 = Eigen::MatrixXd::Zero(x0_.rows(), x0_.cols());
    for (int head = 0; head < heads_; ++head) {
      dx0 += layer0_[static_cast<std::size_t>(head)].backward(
          *g_, x0_, p.w[static_cast<std::size_t>(head)], p.a[static_cast<std::size_t>(head)],
          dz1.middleCols(static_cast<Eigen::Index>(head) * h, h), grads.w[static_cast<std::size_t>(head)],
          grads.a[static_cast<std::size_t>(head)]);
    }
    return in_mask_.apply(dx0);
  }

 private:
  const Graph* g_;
  int heads_;
  DropoutMask in_mask_, hid_mask_;
  Eigen::MatrixXd x0_, z1_, h1_, h1d_;
  std::vector<detail::GatLayer> layer0_;
  detail::GatLayer layer1_;
};

}  // namespace grw::gnn
