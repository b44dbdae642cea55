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

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <map>
#include <set>

#include "grw/coarsen.hpp"
#include "grw/sbm.hpp"
#include "oracle_util.hpp"

namespace grw {
namespace {

Graph two_triangles() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
}

Graph two_cliques_with_bridge() {
  std::vector<EdgeRef> edges;
  for (NodeId u = 0; u < 5; ++u) {
    for (NodeId v = u + 1; v < 5; ++v) edges.push_back({u, v, 1.0});
  }
  for (NodeId u = 5; u < 10; ++u) {
    for (NodeId v = u + 1; v < 10; ++v) edges.push_back({u, v, 1.0});
  }
  edges.push_back({4, 5, 1.0});
  return Graph::from_edges(10, std::move(edges));
}

std::set<std::set<NodeId>> clusters_of(const Partition& p) {
  std::map<NodeId, std::set<NodeId>> acc;
  for (NodeId i = 0; i < p.num_nodes(); ++i) acc[p.assign[static_cast<std::size_t>(i)]].insert(i);
  std::set<std::set<NodeId>> out;
  for (auto& [_, members] : acc) out.insert(members);
  return out;
}

TEST(PartitionVariation, EdgeFamilyMergesWithinEachTriangle) {
  Graph g = two_triangles();
  VariationOptions opts;
  opts.seed = 5;
  Partition p = partition_variation(g, VariationFamily::kEdge, 4, opts);
  p.validate(6);
  EXPECT_EQ(p.num_clusters(), 4);
  // One merged pair inside each triangle, two singletons.
  int pairs_left = 0;
  int pairs_right = 0;
  for (const auto& cluster : clusters_of(p)) {
    if (cluster.size() == 2) {
      const bool left = *cluster.begin() < 3;
      const bool right = *cluster.rbegin() >= 3;
      EXPECT_NE(left, right) << "merged pair crosses triangles";
      if (left) ++pairs_left;
      if (right) ++pairs_right;
    }
  }
  EXPECT_EQ(pairs_left, 1);
  EXPECT_EQ(pairs_right, 1);

  // Oracle: enumerate every pair of disjoint edges; the greedy result must
  // attain the minimum total variation cost under the same test vectors.
  Eigen::MatrixXd dense = jacobi_smooth(g, opts.test_vectors, opts.relaxation_sweeps,
                                        derive_seed(opts.seed, "variation", 0));
  center_and_normalize_columns(dense);
  auto pair_cost = [&](NodeId a, NodeId b) {
    double total = 0.0;
    for (Eigen::Index t = 0; t < dense.cols(); ++t) {
      const double d = dense(a, t) - dense(b, t);
      total += 0.5 * d * d;  // variance of two points = d^2 / 2
    }
    return total / static_cast<double>(dense.cols());
  };
  double best = 1e300;
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (std::size_t j = i + 1; j < edges.size(); ++j) {
      std::set<NodeId> touched{edges[i].u, edges[i].v, edges[j].u, edges[j].v};
      if (touched.size() < 4) continue;
      best = std::min(best, pair_cost(edges[i].u, edges[i].v) + pair_cost(edges[j].u, edges[j].v));
    }
  }
  double achieved = 0.0;
  for (const auto& cluster : clusters_of(p)) {
    if (cluster.size() == 2) achieved += pair_cost(*cluster.begin(), *cluster.rbegin());
  }
  EXPECT_NEAR(achieved, best, 1e-12);
}

TEST(PartitionVariation, TargetEqualNodesIsIdentity) {
  Graph g = two_triangles();
  Partition p = partition_variation(g, VariationFamily::kNeighborhood, 6);
  EXPECT_EQ(p.num_clusters(), 6);
  for (NodeId j = 0; j < 6; ++j) EXPECT_EQ(p.sizes[static_cast<std::size_t>(j)], 1);
}

TEST(PartitionVariation, CliqueFamilyCollapsesAClique) {
  std::vector<EdgeRef> edges;
  for (NodeId u = 0; u < 10; ++u) {
    for (NodeId v = u + 1; v < 10; ++v) edges.push_back({u, v, 1.0});
  }
  Graph g = Graph::from_edges(10, std::move(edges));
  Partition p = partition_variation(g, VariationFamily::kClique, 1);
  EXPECT_EQ(p.num_clusters(), 1);
  EXPECT_EQ(p.sizes[0], 10);
}

TEST(PartitionVariation, OutOfRangeTargetThrows) {
  Graph g = two_triangles();
  EXPECT_THROW(partition_variation(g, VariationFamily::kEdge, 0), ArgumentError);
  EXPECT_THROW(partition_variation(g, VariationFamily::kEdge, 7), ArgumentError);
}

TEST(PartitionHeavyEdge, PathOfFourGivesUniqueMatching) {
  Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  Partition p = partition_heavy_edge(g, 2);
  EXPECT_EQ(p.num_clusters(), 2);
  // Oracle: enumerate all matchings; only {(0,1),(2,3)} reaches 2 clusters.
  std::vector<std::vector<std::pair<NodeId, NodeId>>> matchings;
  std::vector<bool> used(4, false);
  std::vector<std::pair<NodeId, NodeId>> cur;
  oracle::enumerate_matchings({{0, 1}, {1, 2}, {2, 3}}, 0, used, cur, matchings);
  std::set<std::set<NodeId>> expected;
  bool found = false;
  for (const auto& m : matchings) {
    if (m.size() == 2) {
      found = true;
      expected.clear();
      for (auto [u, v] : m) expected.insert({u, v});
    }
  }
  ASSERT_TRUE(found);
  EXPECT_EQ(clusters_of(p), expected);
}

TEST(PartitionHeavyEdge, EdgelessGraphStallsAtIdentity) {
  Graph g = Graph::from_edges(5, {});
  HeavyEdgeDiagnostics diag;
  Partition p = partition_heavy_edge(g, 2, &diag);
  EXPECT_EQ(p.num_clusters(), 5);
  EXPECT_TRUE(diag.stalled);
}

TEST(PartitionHeavyEdge, StarMergesExactlyOneLeaf) {
  Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  Partition p = partition_heavy_edge(g, 4);
  EXPECT_EQ(p.num_clusters(), 4);
  int merged = 0;
  for (const auto& cluster : clusters_of(p)) {
    if (cluster.size() == 2) {
      ++merged;
      EXPECT_TRUE(cluster.count(0)) << "the merged pair must contain the center";
    }
  }
  EXPECT_EQ(merged, 1);
}

TEST(PartitionAlgebraicJc, SeparatesCliquesAcrossBridge) {
  Graph g = two_cliques_with_bridge();
  AlgebraicJcOptions opts;
  opts.seed = 3;
  Partition p = partition_algebraic_jc(g, 2, opts);
  ASSERT_EQ(p.num_clusters(), 2);
  std::set<std::set<NodeId>> expected{{0, 1, 2, 3, 4}, {5, 6, 7, 8, 9}};
  EXPECT_EQ(clusters_of(p), expected);

  // Oracle: a dense reference smoothing must rank the bridge's algebraic
  // distance above every intra-clique edge on the first level. Replicate
  // the seeded draw order of the production code, then smooth densely.
  Eigen::MatrixXd init(10, opts.test_vectors);
  {
    Rng rng(derive_seed(opts.seed, "algebraic-jc", 0));
    for (int j = 0; j < opts.test_vectors; ++j) {
      for (int i = 0; i < 10; ++i) init(i, j) = rng.uniform(-0.5, 0.5);
    }
  }
  Eigen::MatrixXd smooth = oracle::jacobi_smooth_dense(10, g.edges(), init, opts.relaxation_sweeps);
  auto dist = [&](NodeId u, NodeId v) {
    double d = 0.0;
    for (Eigen::Index t = 0; t < smooth.cols(); ++t) d = std::max(d, std::abs(smooth(u, t) - smooth(v, t)));
    return d;
  };
  const double bridge = dist(4, 5);
  for (const EdgeRef& e : g.edges()) {
    if (e.u == 4 && e.v == 5) continue;
    EXPECT_LT(dist(e.u, e.v), bridge);
  }
}

TEST(PartitionAlgebraicJc, IdentityAndDeterminism) {
  Graph g = two_cliques_with_bridge();
  Partition id = partition_algebraic_jc(g, 10);
  EXPECT_EQ(id.num_clusters(), 10);
  AlgebraicJcOptions opts;
  opts.seed = 77;
  Partition a = partition_algebraic_jc(g, 3, opts);
  Partition b = partition_algebraic_jc(g, 3, opts);
  EXPECT_EQ(a.assign, b.assign);
}

TEST(PartitionKron, PathFixtureSchurComplement) {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  Eigen::MatrixXd schur = kron_schur_complement(g, {0, 2}, 0.0);
  // Oracle: 1x1 solve by hand. L_SS = I, L_RR = [2], L_SR = [-1 -1]^T:
  // L_c = I - 1/2 * [[1,1],[1,1]].
  EXPECT_NEAR(schur(0, 0), 0.5, 1e-9);
  EXPECT_NEAR(schur(0, 1), -0.5, 1e-9);
  EXPECT_NEAR(schur(1, 0), -0.5, 1e-9);
  EXPECT_NEAR(schur(1, 1), 0.5, 1e-9);
}

TEST(PartitionKron, PathPartitionAgreesWithSchurSignPattern) {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  KronOptions opts;
  opts.seed = 1;
  KronDiagnostics diag;
  Partition p = partition_kron(g, 2, opts, &diag);
  ASSERT_EQ(p.num_clusters(), 2);
  Graph coarse = build_coarse_graph(g, p);
  Eigen::MatrixXd lc = laplacian_dense(coarse);
  Eigen::MatrixXd schur = kron_schur_complement(g, {0, 2}, 0.0);
  // Same entry sign pattern and the same (zero, positive) eigenvalue counts.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_EQ(lc(i, j) > 0, schur(i, j) > 0);
      EXPECT_EQ(lc(i, j) < 0, schur(i, j) < 0);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ea(lc);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(schur);
  for (int i = 0; i < 2; ++i) {
    EXPECT_EQ(ea.eigenvalues()[i] > 1e-9, eb.eigenvalues()[i] > 1e-9);
  }
}

TEST(PartitionKron, TargetEqualNodesIsIdentity) {
  Graph g = two_cliques_with_bridge();
  Partition p = partition_kron(g, 10);
  EXPECT_EQ(p.num_clusters(), 10);
}

TEST(PartitionKron, UnregularizedSingularSystemThrows) {
  // Node 2 is isolated and unselected: L_RR has a zero row.
  Graph g = Graph::from_edges(3, {{0, 1}});
  EXPECT_THROW(kron_schur_complement(g, {0, 1}, 0.0), NumericError);
  Eigen::MatrixXd ok = kron_schur_complement(g, {0, 1}, 1e-6);
  EXPECT_EQ(ok.rows(), 2);
}

TEST(Coarsen, FullRatioIsIdentityEquivalent) {
  SbmData data = generate_sbm({15, 15}, 0.4, 0.05, 3, 8);
  for (CoarsenMethod m : {CoarsenMethod::kVariationNeighborhoods, CoarsenMethod::kVariationCliques,
                          CoarsenMethod::kVariationEdges, CoarsenMethod::kHeavyEdge, CoarsenMethod::kAlgebraicJc,
                          CoarsenMethod::kKron}) {
    CoarsenConfig cfg;
    cfg.method = m;
    cfg.target_ratio = 1.0;
    CoarsenResult r = coarsen(data.graph, data.features, data.labels, cfg);
    EXPECT_EQ(r.partition.num_clusters(), 30) << to_string(m);
    EXPECT_EQ(r.coarse_graph.num_edges(), data.graph.num_edges()) << to_string(m);
    EXPECT_TRUE(r.coarse_features.isApprox(data.features, 1e-12)) << to_string(m);
    EXPECT_EQ(r.coarse_labels.y, data.labels.y) << to_string(m);
    EXPECT_DOUBLE_EQ(r.info.achieved_ratio, 1.0) << to_string(m);
  }
}

TEST(Coarsen, RatioFidelityOnSbm) {
  SbmData data = generate_sbm({120, 120, 120}, 0.08, 0.01, 4, 31);
  for (CoarsenMethod m : {CoarsenMethod::kVariationNeighborhoods, CoarsenMethod::kVariationEdges,
                          CoarsenMethod::kHeavyEdge, CoarsenMethod::kAlgebraicJc}) {
    for (double c : {0.3, 0.5, 0.7}) {
      CoarsenConfig cfg;
      cfg.method = m;
      cfg.target_ratio = c;
      cfg.seed = 17;
      CoarsenResult r = coarsen(data.graph, data.features, data.labels, cfg);
      EXPECT_NEAR(r.info.achieved_ratio, c, 0.05) << to_string(m) << " c=" << c;
      EXPECT_FALSE(r.info.stalled);
    }
  }
}

TEST(Coarsen, MonotoneClusterCountAcrossRatios) {
  SbmData data = generate_sbm({40, 40}, 0.15, 0.02, 3, 12);
  CoarsenConfig cfg;
  cfg.method = CoarsenMethod::kVariationNeighborhoods;
  cfg.seed = 2;
  NodeId prev = data.graph.num_nodes() + 1;
  for (double c : {0.9, 0.7, 0.5, 0.3}) {
    cfg.target_ratio = c;
    CoarsenResult r = coarsen(data.graph, data.features, data.labels, cfg);
    EXPECT_LT(r.partition.num_clusters(), prev);
    prev = r.partition.num_clusters();
  }
}

TEST(Coarsen, InvalidRatioThrows) {
  SbmData data = generate_sbm({10}, 0.5, 0.0, 2, 1);
  CoarsenConfig cfg;
  cfg.target_ratio = 0.0;
  EXPECT_THROW(coarsen(data.graph, data.features, data.labels, cfg), ArgumentError);
  cfg.target_ratio = 1.5;
  EXPECT_THROW(coarsen(data.graph, data.features, data.labels, cfg), ArgumentError);
}

}  // namespace
}  // namespace grw
