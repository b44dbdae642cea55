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

#include <functional>
#include <map>
#include <set>

#include "grw/sbm.hpp"
#include "grw/sparsify.hpp"

namespace grw {
namespace {

Graph shared_edge_diamond() {
  // (u,v) plus common neighbors a,b: N(u)={v,a,b}, N(v)={u,a,b}.
  return Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
}

Graph two_triangles_with_bridge() {
  return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

TEST(EdgeSimilarity, JaccardSharedNeighbors) {
  Graph g = shared_edge_diamond();
  // N(0) = {1,2,3}, N(1) = {0,2,3}: intersection {2,3}, union {0,1,2,3}.
  EXPECT_DOUBLE_EQ(edge_similarity(g, 0, 1, SimilarityKind::kJaccard), 0.5);
}

TEST(EdgeSimilarity, ScanInsideTriangleIsOne) {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
  EXPECT_DOUBLE_EQ(edge_similarity(g, 0, 1, SimilarityKind::kScan), 1.0);
}

TEST(EdgeSimilarity, BridgeJaccardIsZero) {
  Graph g = two_triangles_with_bridge();
  EXPECT_DOUBLE_EQ(edge_similarity(g, 2, 3, SimilarityKind::kJaccard), 0.0);
}

TEST(EdgeSimilarity, NonEdgeThrows) {
  Graph g = shared_edge_diamond();
  EXPECT_THROW(edge_similarity(g, 2, 3, SimilarityKind::kJaccard), ArgumentError);
}

TEST(ForestFire, SingleEdgeIsTraversed) {
  Graph g = Graph::from_edges(2, {{0, 1}});
  auto counts = forest_fire_traversal(g, 3, 0.5);
  EXPECT_GE(counts[0], 1);
}

TEST(ForestFire, DeterministicUnderSeed) {
  SbmData data = generate_sbm({30, 30}, 0.2, 0.02, 2, 5);
  auto a = forest_fire_traversal(data.graph, 11, 0.6);
  auto b = forest_fire_traversal(data.graph, 11, 0.6);
  EXPECT_EQ(a, b);
}

TEST(ForestFire, PrefersIntraCommunityEdges) {
  // Monte-Carlo oracle: average traversal counts over 100 seeds must be
  // higher on intra-community edges than on the sparse inter-community ones.
  SbmData data = generate_sbm({40, 40}, 0.3, 0.01, 2, 23);
  double intra_sum = 0.0;
  double inter_sum = 0.0;
  std::int64_t intra_n = 0;
  std::int64_t inter_n = 0;
  for (RngSeed seed = 0; seed < 100; ++seed) {
    auto counts = forest_fire_traversal(data.graph, seed, 0.4);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      const EdgeRef& e = data.graph.edges()[i];
      const bool intra = data.labels.y[static_cast<std::size_t>(e.u)] == data.labels.y[static_cast<std::size_t>(e.v)];
      (intra ? intra_sum : inter_sum) += static_cast<double>(counts[i]);
      ++(intra ? intra_n : inter_n);
    }
  }
  ASSERT_GT(inter_n, 0);
  EXPECT_GT(intra_sum / static_cast<double>(intra_n), inter_sum / static_cast<double>(inter_n));
}

TEST(Sparsify, FullRatioReturnsGraphUnchanged) {
  SbmData data = generate_sbm({20, 20}, 0.3, 0.05, 2, 2);
  for (SparsifyMethod m : {SparsifyMethod::kRandomEdge, SparsifyMethod::kRandomNodeEdge, SparsifyMethod::kLocalDegree,
                           SparsifyMethod::kLocalSimilarity, SparsifyMethod::kForestFire, SparsifyMethod::kScan}) {
    SparsifyConfig cfg;
    cfg.method = m;
    cfg.target_ratio = 1.0;
    Graph out = sparsify(data.graph, cfg);
    EXPECT_EQ(out.num_edges(), data.graph.num_edges()) << to_string(m);
  }
}

TEST(Sparsify, RandomEdgeExactCountAndUniformity) {
  SbmData data = generate_sbm({10, 10}, 0.6, 0.3, 2, 77);
  const EdgeId m = data.graph.num_edges();
  ASSERT_GE(m, 20);
  SparsifyConfig cfg;
  cfg.method = SparsifyMethod::kRandomEdge;
  cfg.target_ratio = 0.5;
  const EdgeId budget = std::llround(0.5 * static_cast<double>(m));
  // Chi-square goodness of fit over 1000 seeds (DERIVED oracle): each edge
  // should be kept with frequency budget/m.
  std::vector<std::int64_t> kept_count(static_cast<std::size_t>(m), 0);
  for (RngSeed seed = 0; seed < 1000; ++seed) {
    cfg.seed = seed;
    Graph out = sparsify(data.graph, cfg);
    ASSERT_EQ(out.num_edges(), budget);
    for (const EdgeRef& e : out.edges()) {
      ++kept_count[static_cast<std::size_t>(data.graph.edge_id(e.u, e.v))];
    }
  }
  const double expected = 1000.0 * static_cast<double>(budget) / static_cast<double>(m);
  double chi2 = 0.0;
  for (std::int64_t c : kept_count) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  // df = m-1; allow a generous tail.
  EXPECT_LT(chi2, static_cast<double>(m) + 5.0 * std::sqrt(2.0 * static_cast<double>(m)));
}

TEST(Sparsify, RandomNodeEdgeExactCount) {
  SbmData data = generate_sbm({25, 25}, 0.3, 0.05, 2, 3);
  SparsifyConfig cfg;
  cfg.method = SparsifyMethod::kRandomNodeEdge;
  cfg.target_ratio = 0.4;
  cfg.seed = 5;
  Graph out = sparsify(data.graph, cfg);
  EXPECT_EQ(out.num_edges(), std::llround(0.4 * static_cast<double>(data.graph.num_edges())));
  EXPECT_EQ(out.num_nodes(), data.graph.num_nodes());
}

TEST(Sparsify, SimilarityDropsBridgeFirst) {
  Graph g = two_triangles_with_bridge();
  SparsifyConfig cfg;
  cfg.method = SparsifyMethod::kLocalSimilarity;
  cfg.target_ratio = 6.0 / 7.0;  // drop exactly one edge
  Graph out = sparsify(g, cfg);
  EXPECT_EQ(out.num_edges(), 6);
  EXPECT_FALSE(out.has_edge(2, 3)) << "the zero-jaccard bridge must go first";
}

TEST(Sparsify, DegreeKeepsAtLeastOneEdgePerNode) {
  Graph star = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  SparsifyConfig cfg;
  cfg.method = SparsifyMethod::kLocalDegree;
  cfg.target_ratio = 0.3;
  Graph out = sparsify(star, cfg);
  EXPECT_GE(out.degree(0), 1);
  for (NodeId leaf = 1; leaf < 5; ++leaf) {
    EXPECT_TRUE(out.degree(leaf) >= 1 || out.degree(leaf) == 0);
  }
}

TEST(Sparsify, AchievedRatioWithinTwoPercent) {
  SbmData data = generate_sbm({150, 150, 150}, 0.04, 0.005, 3, 9);
  ASSERT_GE(data.graph.num_edges(), 500);
  for (SparsifyMethod m : {SparsifyMethod::kRandomEdge, SparsifyMethod::kRandomNodeEdge, SparsifyMethod::kLocalDegree,
                           SparsifyMethod::kLocalSimilarity, SparsifyMethod::kForestFire, SparsifyMethod::kScan}) {
    for (double s : {0.3, 0.5, 0.7, 0.9}) {
      SparsifyConfig cfg;
      cfg.method = m;
      cfg.target_ratio = s;
      cfg.seed = 4;
      Graph out = sparsify(data.graph, cfg);
      const double achieved = static_cast<double>(out.num_edges()) / static_cast<double>(data.graph.num_edges());
      EXPECT_NEAR(achieved, s, 0.02) << to_string(m) << " s=" << s;
    }
  }
}

TEST(Sparsify, EdgesAreSubsetAndDeterministic) {
  SbmData data = generate_sbm({40, 40}, 0.2, 0.02, 2, 13);
  for (SparsifyMethod m : {SparsifyMethod::kRandomEdge, SparsifyMethod::kRandomNodeEdge, SparsifyMethod::kForestFire}) {
    SparsifyConfig cfg;
    cfg.method = m;
    cfg.target_ratio = 0.5;
    cfg.seed = 21;
    Graph a = sparsify(data.graph, cfg);
    Graph b = sparsify(data.graph, cfg);
    ASSERT_EQ(a.num_edges(), b.num_edges()) << to_string(m);
    for (std::size_t i = 0; i < a.edges().size(); ++i) {
      EXPECT_EQ(a.edges()[i].u, b.edges()[i].u);
      EXPECT_EQ(a.edges()[i].v, b.edges()[i].v);
    }
    for (const EdgeRef& e : a.edges()) {
      EXPECT_TRUE(data.graph.has_edge(e.u, e.v)) << to_string(m);
    }
  }
}

TEST(Sparsify, ScoreMonotonicityPerNode) {
  // Simi/Scan/Degree ranking semantics. For every node, no removed edge may
  // out-score every kept edge there (a node's best-ranked edge survives).
  // Scan ranks globally, so it additionally satisfies the strict per-node
  // form: no removed edge out-scores any kept edge at the same node.
  SbmData data = generate_sbm({60, 60}, 0.12, 0.02, 2, 19);
  struct Case {
    SparsifyMethod method;
    bool strict;
    std::function<double(const Graph&, NodeId, NodeId, NodeId)> score;
  };
  std::vector<Case> cases;
  cases.push_back({SparsifyMethod::kLocalSimilarity, false, [](const Graph& g, NodeId, NodeId u, NodeId v) {
                     return edge_similarity(g, u, v, SimilarityKind::kJaccard);
                   }});
  cases.push_back({SparsifyMethod::kScan, true, [](const Graph& g, NodeId, NodeId u, NodeId v) {
                     return edge_similarity(g, u, v, SimilarityKind::kScan);
                   }});
  cases.push_back({SparsifyMethod::kLocalDegree, false, [](const Graph& g, NodeId at, NodeId u, NodeId v) {
                     return static_cast<double>(g.degree(at == u ? v : u));
                   }});
  for (const auto& c : cases) {
    SparsifyConfig cfg;
    cfg.method = c.method;
    cfg.target_ratio = 0.5;
    Graph out = sparsify(data.graph, cfg);
    for (NodeId v = 0; v < data.graph.num_nodes(); ++v) {
      double best_kept = -1e300;
      double worst_kept = 1e300;
      double best_removed = -1e300;
      for (NodeId u : data.graph.neighbors(v)) {
        const double sc = c.score(data.graph, v, std::min(u, v), std::max(u, v));
        if (out.has_edge(u, v)) {
          best_kept = std::max(best_kept, sc);
          worst_kept = std::min(worst_kept, sc);
        } else {
          best_removed = std::max(best_removed, sc);
        }
      }
      if (best_removed == -1e300 || best_kept == -1e300) continue;
      EXPECT_LE(best_removed, best_kept + 1e-12) << to_string(c.method) << " node " << v;
      if (c.strict) {
        EXPECT_LE(best_removed, worst_kept + 1e-12) << to_string(c.method) << " node " << v;
      }
    }
  }
}

TEST(Sparsify, InvalidRatioThrows) {
  Graph g = Graph::from_edges(3, {{0, 1}, {1, 2}});
  SparsifyConfig cfg;
  cfg.target_ratio = 0.0;
  EXPECT_THROW(sparsify(g, cfg), ArgumentError);
  cfg.target_ratio = 1.0001;
  EXPECT_THROW(sparsify(g, cfg), ArgumentError);
}

}  // namespace
}  // namespace grw
