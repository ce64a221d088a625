#include <gtest/gtest.h>

#include <random>

#include "lbmcf/shortest_paths.hpp"
#include "support/test_support.hpp"

using namespace lbmcf;

namespace {

Network chain(std::int32_t edges) {
  std::vector<Edge> list;
  for (std::int32_t v = 0; v < edges; ++v) list.push_back({v, v + 1, 1.0});
  return Network(edges + 1, std::move(list));
}

double path_length(const Network& g, const std::vector<double>& lengths, const std::vector<EdgeId>& path) {
  double sum = 0.0;
  for (EdgeId e : path) sum += lengths[static_cast<std::size_t>(e)];
  (void)g;
  return sum;
}

}  // namespace

TEST(TruncatedBellmanFord, ChainBeyondBoundIsUnreachable) {
  const Network g = chain(3);
  const std::vector<double> ones(3, 1.0);
  const auto tree = truncated_bellman_ford(g, ones, 0, 2);
  EXPECT_EQ(tree.dist[2], 2.0);
  EXPECT_EQ(tree.dist[3], kInfinity);
  EXPECT_FALSE(tree.reachable(3));
  EXPECT_EQ(tree.dist[0], 0.0);
  EXPECT_EQ(tree.hops[0], 0);
}

TEST(TruncatedBellmanFord, SingleEdge) {
  const Network g(2, {{0, 1, 1.0}});
  const std::vector<double> len{1e-7};
  EXPECT_EQ(truncated_bellman_ford(g, len, 0, 1).dist[1], 1e-7);
}

TEST(TruncatedBellmanFord, DiamondDependsOnHopBound) {
  // s=0, a=1, t=2: s→a 0.3, a→t 0.3, s→t 0.7.
  const Network g(3, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const std::vector<double> len{0.3, 0.3, 0.7};
  const auto one = truncated_bellman_ford(g, len, 0, 1);
  EXPECT_DOUBLE_EQ(one.dist[2], 0.7);
  EXPECT_EQ(one.path_to(g, 2), std::vector<EdgeId>{2});
  const auto two = truncated_bellman_ford(g, len, 0, 2);
  EXPECT_DOUBLE_EQ(two.dist[2], 0.6);
  EXPECT_EQ(two.path_to(g, 2), (std::vector<EdgeId>{0, 1}));
}

TEST(TruncatedBellmanFord, RecordedPathStaysWithinBoundAfterLaterImprovement) {
  // t is first reached in 2 hops via a; a is later improved to a 3-hop label,
  // which must not leak into t's recorded path.
  // 0→1 (10), 0→2 (1), 2→3 (1), 3→1 (1), 1→4 (1)
  const Network g(5, {{0, 1, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}, {3, 1, 1.0}, {1, 4, 1.0}});
  const std::vector<double> len{10.0, 1.0, 1.0, 1.0, 1.0};
  const auto tree = truncated_bellman_ford(g, len, 0, 3);
  EXPECT_DOUBLE_EQ(tree.dist[1], 3.0);
  EXPECT_DOUBLE_EQ(tree.dist[4], 11.0);
  const auto path = tree.path_to(g, 4);
  EXPECT_EQ(path, (std::vector<EdgeId>{0, 4}));
}

TEST(TruncatedBellmanFord, MatchesWalkEnumeration) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> length(0.01, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = fixtures::random_instance(rng);
    const Network& g = inst.network;
    std::vector<double> len(static_cast<std::size_t>(g.edge_count()));
    for (auto& l : len) l = length(rng);
    const VertexId s = inst.commodities[0].origin;
    const auto tree = truncated_bellman_ford(g, len, s, inst.hop_bound);
    const auto expected = fixtures::brute_force_distances(g, len, s, inst.hop_bound);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      const auto i = static_cast<std::size_t>(v);
      if (std::isinf(expected[i])) {
        EXPECT_FALSE(tree.reachable(v));
        continue;
      }
      ASSERT_TRUE(tree.reachable(v));
      EXPECT_NEAR(tree.dist[i], expected[i], 1e-12 * std::max(1.0, expected[i]));
      const auto path = tree.path_to(g, v);
      EXPECT_LE(static_cast<std::int32_t>(path.size()), inst.hop_bound);
      EXPECT_EQ(static_cast<std::int32_t>(path.size()), tree.hops[i]);
      EXPECT_NEAR(path_length(g, len, path), tree.dist[i], 1e-12 * std::max(1.0, expected[i]));
      if (!path.empty()) {
        EXPECT_EQ(g.edge(path.front()).tail, s);
        EXPECT_EQ(g.edge(path.back()).head, v);
      }
    }
  }
}

TEST(HopShortestPathTree, StarLeavesAtOneHop) {
  const Network g(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
  const auto tree = hop_shortest_path_tree(g, 0, 1);
  for (VertexId v = 1; v < 4; ++v) EXPECT_EQ(tree.hops[static_cast<std::size_t>(v)], 1);
}

TEST(HopShortestPathTree, ChainTruncated) {
  const auto tree = hop_shortest_path_tree(chain(5), 0, 3);
  EXPECT_EQ(tree.hops[3], 3);
  EXPECT_FALSE(tree.reachable(4));
  EXPECT_FALSE(tree.reachable(5));
}

TEST(HopShortestPathTree, PicksShorterRoute) {
  // 4-hop route 0→1→2→3→5 and 2-hop route 0→4→5.
  const Network g(6, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 5, 1.0}, {0, 4, 1.0}, {4, 5, 1.0}});
  const auto tree = hop_shortest_path_tree(g, 0, 9);
  EXPECT_EQ(tree.hops[5], 2);
  EXPECT_EQ(tree.path_to(g, 5), (std::vector<EdgeId>{4, 5}));
}

TEST(HopShortestPathTree, AgreesWithUnitLengthBellmanFord) {
  std::mt19937_64 rng(5);
  fixtures::RandomSpec spec;
  spec.max_edges = 24;
  for (int trial = 0; trial < 300; ++trial) {
    const Instance inst = fixtures::random_instance(rng, spec);
    const Network& g = inst.network;
    const std::vector<double> ones(static_cast<std::size_t>(g.edge_count()), 1.0);
    const VertexId s = inst.commodities[0].origin;
    const auto bfs = hop_shortest_path_tree(g, s, inst.hop_bound);
    const auto bf = truncated_bellman_ford(g, ones, s, inst.hop_bound);
    const auto hops = fixtures::brute_force_hops(g, s, inst.hop_bound);
    EXPECT_EQ(bfs.hops, hops);
    for (VertexId v = 0; v < g.vertex_count(); ++v) EXPECT_EQ(bfs.path_to(g, v), bf.path_to(g, v));
  }
}

TEST(HopShortestPathTree, FilterAndEarlyExit) {
  const Network g(4, {{0, 1, 1.0}, {1, 3, 1.0}, {0, 2, 1.0}, {2, 3, 1.0}});
  const auto filtered = hop_shortest_path_tree(g, 0, 2, [](EdgeId e) { return e != 1; });
  EXPECT_EQ(filtered.path_to(g, 3), (std::vector<EdgeId>{2, 3}));
  const VertexId targets[] = {1};
  const auto early = hop_shortest_path_tree(g, 0, 2, AllEdges{}, targets);
  EXPECT_TRUE(early.reachable(1));
}

TEST(PruneUnreachablePairs, Cases) {
  // Components {0,1} and {2,3}; plus a 3-hop chain 4→5→6→7.
  const Network g(8, {{0, 1, 1.0}, {2, 3, 1.0}, {4, 5, 1.0}, {5, 6, 1.0}, {6, 7, 1.0}});
  Instance inst{g, {{0, 1, 1.0}, {0, 3, 1.0}, {4, 7, kUnbounded}}, 2};
  auto pruned = prune_unreachable_pairs(inst);
  ASSERT_EQ(pruned.instance.commodity_count(), 1);
  EXPECT_EQ(pruned.removed.size(), 2u);
  EXPECT_EQ(pruned.kept_index, std::vector<std::int32_t>{0});

  inst.hop_bound = 3;
  pruned = prune_unreachable_pairs(inst);
  EXPECT_EQ(pruned.kept_index, (std::vector<std::int32_t>{0, 2}));

  Instance all_ok{g, {{0, 1, 1.0}, {4, 7, 2.0}}, 3};
  EXPECT_EQ(prune_unreachable_pairs(all_ok).instance, all_ok);
}
