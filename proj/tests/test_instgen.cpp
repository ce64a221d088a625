#include <gtest/gtest.h>

#include <map>
#include <set>

#include "lbmcf/instgen.hpp"
#include "lbmcf/validate.hpp"

using namespace lbmcf;

TEST(GridNetwork, SizesFollowTheFormula) {
  const std::map<int, std::pair<int, int>> expected{{2, {72, 276}}, {4, {144, 588}}, {6, {216, 900}}, {8, {288, 1212}}};
  for (const auto& [b, sizes] : expected) {
    GridGenConfig c;
    c.a = 6;
    c.b = b;
    const Network g = generate_grid_network(c);
    EXPECT_EQ(g.vertex_count(), sizes.first);
    EXPECT_EQ(g.edge_count(), sizes.second);
    EXPECT_EQ(g.edge_count(), grid_edge_count(6, b));
  }
}

TEST(GridNetwork, Capacities) {
  GridGenConfig c;
  c.a = 4;
  c.b = 3;
  const Network g = generate_grid_network(c);
  const std::int32_t per_grid = 16;
  std::map<std::int32_t, std::set<VertexId>> inter_heads;
  for (const Edge& e : g.edges()) {
    const auto gt = e.tail / per_grid, gh = e.head / per_grid;
    if (gt == gh) {
      EXPECT_EQ(e.capacity, 3600.0);
    } else {
      EXPECT_EQ(gh, gt + 1);
      EXPECT_GE(e.capacity, 1.0);
      EXPECT_LE(e.capacity, 100.0);
      EXPECT_EQ(e.capacity, std::floor(e.capacity));
      inter_heads[gt].insert(e.head);
    }
  }
  // Each inter-grid layer is a permutation.
  for (const auto& [grid, heads] : inter_heads) EXPECT_EQ(heads.size(), 16u);
}

TEST(GridNetwork, RejectsBadConfig) {
  GridGenConfig c;
  c.a = 1;
  EXPECT_THROW(generate_grid_network(c), ParameterError);
  c = {};
  c.lambda = 0.0;
  EXPECT_THROW(c.validate(), ParameterError);
  c.lambda = 1.5;
  EXPECT_THROW(c.validate(), ParameterError);
}

TEST(DemandsModeOne, SingleEdgeScaling) {
  const Network g(2, {{0, 1, 10.0}});
  const auto commodities = assign_demands_mode1(g, 1, 0.6, 1, 5);
  ASSERT_EQ(commodities.size(), 1u);
  EXPECT_EQ(commodities[0].origin, 0);
  EXPECT_EQ(commodities[0].destination, 1);
  EXPECT_NEAR(commodities[0].demand, 6.0, 1e-12);
}

TEST(DemandsModeOne, WitnessReachesTargetCongestion) {
  for (double lambda : {0.3, 1.0}) {
    GridGenConfig c;
    c.a = 4;
    c.b = 3;
    c.k = 12;
    c.lambda = lambda;
    c.hop_bound = 6;
    const Instance inst = generate_grid_instance(c);
    // Route every demand along its hop-shortest path and measure congestion.
    std::vector<double> load(static_cast<std::size_t>(inst.network.edge_count()), 0.0);
    std::set<std::pair<VertexId, VertexId>> pairs;
    for (const auto& com : inst.commodities) {
      EXPECT_NE(com.origin, com.destination);
      EXPECT_TRUE(pairs.insert({com.origin, com.destination}).second);
      const VertexId t[] = {com.destination};
      const auto tree = hop_shortest_path_tree(inst.network, com.origin, inst.hop_bound, AllEdges{}, t);
      ASSERT_TRUE(tree.reachable(com.destination));
      for (EdgeId e : tree.path_to(inst.network, com.destination)) load[static_cast<std::size_t>(e)] += com.demand;
    }
    double congestion = 0.0;
    for (EdgeId e = 0; e < inst.network.edge_count(); ++e)
      congestion = std::max(congestion, load[static_cast<std::size_t>(e)] / inst.network.edge(e).capacity);
    EXPECT_NEAR(congestion, lambda, 1e-12);
  }
}

TEST(DemandsModeOne, Deterministic) {
  GridGenConfig c;
  c.b = 3;
  c.seed = 77;
  EXPECT_EQ(generate_grid_instance(c), generate_grid_instance(c));
  GridGenConfig d = c;
  d.seed = 78;
  EXPECT_FALSE(generate_grid_instance(c) == generate_grid_instance(d));
}

TEST(DemandsModeOne, GivesUpWhenNothingIsReachable) {
  const Network g(3, {{0, 1, 1.0}});
  EXPECT_THROW(assign_demands_mode1(g, 2, 0.5, 1, 1), ParameterError);
  EXPECT_THROW(assign_demands_mode1(g, 7, 0.5, 1, 1), ParameterError);
}
