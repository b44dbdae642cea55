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

#include "grw/partition.hpp"
#include "grw/rng.hpp"
#include "grw/sbm.hpp"
#include "oracle_util.hpp"

namespace grw {
namespace {

Partition random_partition(NodeId n, NodeId clusters, RngSeed seed) {
  Rng rng(seed);
  std::vector<NodeId> raw(static_cast<std::size_t>(n));
  // Guarantee every cluster is non-empty, then assign the rest uniformly.
  for (NodeId j = 0; j < clusters; ++j) raw[static_cast<std::size_t>(j)] = j;
  for (NodeId i = clusters; i < n; ++i) raw[static_cast<std::size_t>(i)] = static_cast<NodeId>(rng.index(static_cast<std::size_t>(clusters)));
  std::vector<NodeId> perm(raw.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<NodeId>(i);
  rng.shuffle(perm);
  std::vector<NodeId> shuffled(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) shuffled[static_cast<std::size_t>(perm[i])] = raw[i];
  return Partition::from_assignment(shuffled);
}

Features random_features(NodeId n, int d, RngSeed seed) {
  Features x(n, d);
  Rng rng(seed);
  for (NodeId i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
  }
  return x;
}

TEST(NormalizedPartitionApply, TwoClusterExample) {
  Partition p = Partition::from_assignment({0, 0, 1});
  Features x(3, 2);
  x << 2, 0, 0, 2, 5, 5;
  Features out = normalized_partition_apply(p, x);
  const double s = std::sqrt(2.0);
  EXPECT_NEAR(out(0, 0), 2.0 / s, 1e-12);
  EXPECT_NEAR(out(0, 1), 2.0 / s, 1e-12);
  EXPECT_NEAR(out(1, 0), 5.0, 1e-12);
  EXPECT_NEAR(out(1, 1), 5.0, 1e-12);
}

TEST(NormalizedPartitionApply, IdentityPartitionIsIdentity) {
  Features x = random_features(8, 3, 5);
  Features out = normalized_partition_apply(Partition::identity(8), x);
  EXPECT_TRUE(out.isApprox(x, 1e-14));
}

TEST(NormalizedPartitionApply, MatchesDenseMatrixOracle) {
  for (RngSeed seed = 0; seed < 5; ++seed) {
    Partition p = random_partition(30, 7, 100 + seed);
    Features x = random_features(30, 4, 200 + seed);
    Features ours = normalized_partition_apply(p, x);
    Eigen::MatrixXd ref = oracle::apply_partition_dense(p, x);
    EXPECT_TRUE(Eigen::MatrixXd(ours).isApprox(ref, 1e-10));
  }
}

TEST(NormalizedPartitionApply, DimensionMismatchThrows) {
  Partition p = Partition::identity(4);
  EXPECT_THROW(normalized_partition_apply(p, random_features(5, 2, 1)), DimensionError);
}

TEST(NormalizedPartitionApply, RoundTripIsOrthonormal) {
  // P^T P = I: lifting coarse vectors and re-applying returns them exactly.
  for (RngSeed seed = 0; seed < 20; ++seed) {
    const NodeId n = static_cast<NodeId>(20 + 37 * seed % 400);
    const NodeId k = std::max<NodeId>(1, static_cast<NodeId>(n / 3));
    Partition p = random_partition(n, k, seed);
    Features coarse = random_features(p.num_clusters(), 3, 300 + seed);
    Features round = normalized_partition_apply(p, normalized_partition_lift(p, coarse));
    EXPECT_LT((round - coarse).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(NormalizedPartitionApply, MassConservation) {
  // sum_j sqrt(|C_j|) X'_j = column sums of X.
  Partition p = random_partition(60, 11, 4);
  Features x = random_features(60, 5, 44);
  Features coarse = normalized_partition_apply(p, x);
  Eigen::RowVectorXd recovered = Eigen::RowVectorXd::Zero(5);
  for (NodeId j = 0; j < p.num_clusters(); ++j) {
    recovered += std::sqrt(static_cast<double>(p.sizes[static_cast<std::size_t>(j)])) * coarse.row(j);
  }
  EXPECT_TRUE(recovered.isApprox(Eigen::MatrixXd(x).colwise().sum(), 1e-6));
}

TEST(CoarsenLabels, MajorityAndTieBreak) {
  Partition p = Partition::from_assignment({0, 0, 0});
  Labels y{{1, 1, 2}, 3};
  EXPECT_EQ(coarsen_labels(p, y).y[0], 1);
  Labels tie{{0, 1}, 2};
  EXPECT_EQ(coarsen_labels(Partition::from_assignment({0, 0}), tie).y[0], 0);
}

TEST(CoarsenLabels, MatchesCountingOracle) {
  for (RngSeed seed = 0; seed < 5; ++seed) {
    Partition p = random_partition(100, 13, seed);
    Labels y;
    y.num_classes = 6;
    Rng rng(900 + seed);
    for (int i = 0; i < 100; ++i) y.y.push_back(static_cast<NodeId>(rng.index(6)));
    Labels ours = coarsen_labels(p, y);
    EXPECT_EQ(ours.y, oracle::cluster_modes(p, y));
  }
}

TEST(CoarsenLabels, ArgmaxInvariantToNormalization) {
  // The C^{-1/2} scaling in P cannot change a per-cluster argmax of counts,
  // so the dominating label equals the plain mode.
  Partition p = random_partition(80, 9, 2);
  Labels y;
  y.num_classes = 4;
  Rng rng(12);
  for (int i = 0; i < 80; ++i) y.y.push_back(static_cast<NodeId>(rng.index(4)));
  EXPECT_EQ(coarsen_labels(p, y).y, oracle::cluster_modes(p, y));
}

TEST(BuildCoarseGraph, TriangleExample) {
  Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  Graph coarse = build_coarse_graph(tri, Partition::from_assignment({0, 0, 1}));
  ASSERT_EQ(coarse.num_edges(), 1);
  EXPECT_DOUBLE_EQ(coarse.edges()[0].w, 2.0);
}

TEST(BuildCoarseGraph, IdentityIsIsomorphic) {
  SbmData data = generate_sbm({10, 10}, 0.5, 0.1, 2, 6);
  Graph coarse = build_coarse_graph(data.graph, Partition::identity(20));
  ASSERT_EQ(coarse.num_edges(), data.graph.num_edges());
  for (std::size_t i = 0; i < coarse.edges().size(); ++i) {
    EXPECT_EQ(coarse.edges()[i].u, data.graph.edges()[i].u);
    EXPECT_EQ(coarse.edges()[i].v, data.graph.edges()[i].v);
    EXPECT_DOUBLE_EQ(coarse.edges()[i].w, data.graph.edges()[i].w);
  }
}

TEST(BuildCoarseGraph, MatchesBruteForceOracle) {
  SbmData data = generate_sbm({25, 25}, 0.3, 0.05, 2, 17);
  for (RngSeed seed = 0; seed < 5; ++seed) {
    Partition p = random_partition(50, 8, 400 + seed);
    Graph coarse = build_coarse_graph(data.graph, p);
    auto ref = oracle::coarse_edges_brute(data.graph, p);
    ASSERT_EQ(coarse.edges().size(), ref.size());
    for (const EdgeRef& e : coarse.edges()) {
      auto it = ref.find({e.u, e.v});
      ASSERT_NE(it, ref.end());
      EXPECT_DOUBLE_EQ(e.w, it->second);
    }
  }
}

}  // namespace
}  // namespace grw
