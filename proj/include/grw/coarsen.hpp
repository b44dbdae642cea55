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

#include <cmath>
#include <string>

#include "grw/coarsen/algebraic_jc.hpp"
#include "grw/coarsen/heavy_edge.hpp"
#include "grw/coarsen/kron.hpp"
#include "grw/coarsen/variation.hpp"
#include "grw/dataset.hpp"
#include "grw/graph.hpp"
#include "grw/partition.hpp"

namespace grw {

enum class CoarsenMethod { kVariationNeighborhoods, kVariationCliques, kVariationEdges, kHeavyEdge, kAlgebraicJc, kKron };

inline const char* to_string(CoarsenMethod m) {
  switch (m) {
    case CoarsenMethod::kVariationNeighborhoods: return "vn";
    case CoarsenMethod::kVariationCliques: return "vc";
    case CoarsenMethod::kVariationEdges: return "ve";
    case CoarsenMethod::kHeavyEdge: return "he";
    case CoarsenMethod::kAlgebraicJc: return "jc";
    case CoarsenMethod::kKron: return "kron";
  }
  return "?";
}

inline CoarsenMethod coarsen_method_from_string(const std::string& s) {
  if (s == "vn") return CoarsenMethod::kVariationNeighborhoods;
  if (s == "vc") return CoarsenMethod::kVariationCliques;
  if (s == "ve") return CoarsenMethod::kVariationEdges;
  if (s == "he") return CoarsenMethod::kHeavyEdge;
  if (s == "jc") return CoarsenMethod::kAlgebraicJc;
  if (s == "kron") return CoarsenMethod::kKron;
  throw ArgumentError("unknown coarsening method: " + s + " (expected vn|vc|ve|he|jc|kron)");
}

struct CoarsenConfig {
  CoarsenMethod method = CoarsenMethod::kVariationNeighborhoods;
  /// Target ratio c = |V'| / |V| in (0, 1].
  double target_ratio = 0.5;
  int jc_test_vectors = 8;
  int jc_relaxation_sweeps = 20;
  double kron_regularization = 1e-9;
  std::int64_t max_cliques = 100000;
  RngSeed seed = 0;

  void validate() const {
    if (!(target_ratio > 0.0 && target_ratio <= 1.0)) {
      throw ArgumentError("coarsen: target ratio must lie in (0,1], got " + std::to_string(target_ratio));
    }
    if (jc_test_vectors < 1) throw ArgumentError("coarsen: jc_test_vectors must be >= 1");
  }
};

struct CoarsenInfo {
  double achieved_ratio = 1.0;
  bool stalled = false;
  bool clique_cap_hit = false;
  int levels = 0;
  double kron_schur_deviation = 0.0;
};

struct CoarsenResult {
  Graph coarse_graph;
  Partition partition;
  Features coarse_features;
  Labels coarse_labels;
  CoarsenInfo info;
};

/// Computes the method's partition at target_n = round(c * n), then applies
/// the shared framework: X' = P^T X, Y' = dominating member label, coarse
/// graph with summed super-edge weights.
inline CoarsenResult coarsen(const Graph& g, const Features& x, const Labels& y, const CoarsenConfig& cfg) {
  cfg.validate();
  if (x.rows() != g.num_nodes()) throw DimensionError("coarsen: feature rows != node count");
  if (static_cast<NodeId>(y.y.size()) != g.num_nodes()) throw DimensionError("coarsen: label rows != node count");

  const NodeId n = g.num_nodes();
  const NodeId target_n = std::max<NodeId>(1, static_cast<NodeId>(std::llround(cfg.target_ratio * n)));

  CoarsenResult out;
  switch (cfg.method) {
    case CoarsenMethod::kVariationNeighborhoods:
    case CoarsenMethod::kVariationCliques:
    case CoarsenMethod::kVariationEdges: {
      VariationFamily family = cfg.method == CoarsenMethod::kVariationNeighborhoods ? VariationFamily::kNeighborhood
                               : cfg.method == CoarsenMethod::kVariationCliques     ? VariationFamily::kClique
                                                                                    : VariationFamily::kEdge;
      VariationOptions opts;
      opts.test_vectors = cfg.jc_test_vectors;
      opts.relaxation_sweeps = cfg.jc_relaxation_sweeps;
      opts.seed = cfg.seed;
      opts.max_cliques = cfg.max_cliques;
      VariationDiagnostics diag;
      out.partition = partition_variation(g, family, target_n, opts, &diag);
      out.info.stalled = diag.stalled;
      out.info.clique_cap_hit = diag.clique_cap_hit;
      out.info.levels = diag.levels;
      break;
    }
    case CoarsenMethod::kHeavyEdge: {
      HeavyEdgeDiagnostics diag;
      out.partition = partition_heavy_edge(g, target_n, &diag);
      out.info.stalled = diag.stalled;
      out.info.levels = diag.levels;
      break;
    }
    case CoarsenMethod::kAlgebraicJc: {
      AlgebraicJcOptions opts;
      opts.test_vectors = cfg.jc_test_vectors;
      opts.relaxation_sweeps = cfg.jc_relaxation_sweeps;
      opts.seed = cfg.seed;
      AlgebraicJcDiagnostics diag;
      out.partition = partition_algebraic_jc(g, target_n, opts, &diag);
      out.info.stalled = diag.stalled;
      out.info.levels = diag.levels;
      break;
    }
    case CoarsenMethod::kKron: {
      KronOptions opts;
      opts.regularization = cfg.kron_regularization;
      opts.seed = cfg.seed;
      KronDiagnostics diag;
      out.partition = partition_kron(g, target_n, opts, &diag);
      out.info.stalled = diag.stalled;
      out.info.levels = diag.levels;
      out.info.kron_schur_deviation = diag.max_schur_deviation;
      break;
    }
  }
  out.coarse_graph = build_coarse_graph(g, out.partition);
  out.coarse_features = normalized_partition_apply(out.partition, x);
  out.coarse_labels = coarsen_labels(out.partition, y);
  out.info.achieved_ratio = static_cast<double>(out.partition.num_clusters()) / static_cast<double>(n);
  return out;
}

}  // namespace grw
