#include <gtest/gtest.h>

#include <vector>

#include "fixtures.hpp"
#include "psirank/graph.hpp"

using namespace psirank;

TEST(SocialGraph, ToyGraphHasExpectedAdjacency) {
  const SocialGraph g = fixtures::toy_graph();
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.edge_count(), 8u);
  using V = std::vector<UserId>;
  EXPECT_EQ(V(g.leaders(fixtures::A).begin(), g.leaders(fixtures::A).end()), (V{1, 2, 3}));
  EXPECT_EQ(V(g.followers(fixtures::A).begin(), g.followers(fixtures::A).end()), (V{1, 2}));
  EXPECT_EQ(V(g.leaders(fixtures::C).begin(), g.leaders(fixtures::C).end()), (V{0}));
  EXPECT_TRUE(g.is_consistent());
  EXPECT_FALSE(g.is_symmetric());
}

TEST(SocialGraph, ToyGraphLeaderMatrixColumnOfA) {
  // W = L D_out^-1: column A holds 1/|L(A)| at each of A's leaders.
  const SocialGraph g = fixtures::toy_graph();
  const auto leaders = g.leaders(fixtures::A);
  std::vector<double> column(4, 0.0);
  for (UserId k : leaders) column[k] = 1.0 / static_cast<double>(leaders.size());
  EXPECT_DOUBLE_EQ(column[0], 0.0);
  for (int k = 1; k < 4; ++k) EXPECT_DOUBLE_EQ(column[k], 1.0 / 3.0);
}

TEST(SocialGraph, EmptyEdgeList) {
  const SocialGraph g = SocialGraph::from_edges({}, 2);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edge_count(), 0u);
  EXPECT_TRUE(g.leaders(0).empty());
  EXPECT_TRUE(g.followers(1).empty());
  EXPECT_TRUE(g.is_consistent());
}

TEST(SocialGraph, TwoCycle) {
  const SocialGraph g = SocialGraph::from_edges(fixtures::two_cycle_edges(), 2);
  ASSERT_EQ(g.leaders(0).size(), 1u);
  EXPECT_EQ(g.leaders(0)[0], 1u);
  ASSERT_EQ(g.followers(0).size(), 1u);
  EXPECT_EQ(g.followers(0)[0], 1u);
  EXPECT_TRUE(g.is_symmetric());
}

TEST(SocialGraph, DuplicatesAreDropped) {
  const std::vector<Edge> edges{{0, 1}, {0, 1}, {2, 1}, {0, 1}};
  const SocialGraph g = SocialGraph::from_edges(edges, 3);
  EXPECT_EQ(g.edge_count(), 2u);
  EXPECT_TRUE(g.follows(0, 1));
  EXPECT_TRUE(g.follows(2, 1));
  EXPECT_FALSE(g.follows(1, 0));
}

TEST(SocialGraph, SelfLoopIsRejectedWithThePair) {
  const std::vector<Edge> edges{{0, 1}, {2, 2}};
  try {
    (void)SocialGraph::from_edges(edges, 3);
    FAIL() << "self-loop accepted";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.edge(), (Edge{2, 2}));
  }
}

TEST(SocialGraph, OutOfRangeIdIsRejected) {
  const std::vector<Edge> edges{{0, 5}};
  try {
    (void)build_graph(edges, 3);
    FAIL() << "out-of-range id accepted";
  } catch (const GraphError& e) {
    EXPECT_EQ(e.edge(), (Edge{0, 5}));
  }
}

TEST(SocialGraph, EdgesComeOutSorted) {
  const std::vector<Edge> edges{{2, 0}, {0, 2}, {1, 0}, {0, 1}};
  const auto out = SocialGraph::from_edges(edges, 3).edges();
  EXPECT_EQ(out, (std::vector<Edge>{{0, 1}, {0, 2}, {1, 0}, {2, 0}}));
}

TEST(SocialGraph, DegreeSumsMatch) {
  const SocialGraph g = fixtures::toy_graph();
  std::size_t leaders = 0, followers = 0;
  for (UserId u = 0; u < g.size(); ++u) {
    leaders += g.leaders(u).size();
    followers += g.followers(u).size();
  }
  EXPECT_EQ(leaders, followers);
  EXPECT_EQ(leaders, g.edge_count());
}
