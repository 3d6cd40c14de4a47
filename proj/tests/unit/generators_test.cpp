#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "psirank/error.hpp"
#include "psirank/generators.hpp"

using namespace psirank;

namespace {

void expect_undirected(const SocialGraph& g) {
  EXPECT_TRUE(g.is_consistent());
  EXPECT_TRUE(g.is_symmetric());
  for (UserId u = 0; u < g.size(); ++u) {
    ASSERT_TRUE(std::equal(g.leaders(u).begin(), g.leaders(u).end(), g.followers(u).begin(),
                           g.followers(u).end()));
  }
}

}  // namespace

TEST(BinaryTree, DepthNineHas1023NodesAnd512Leaves) {
  const SocialGraph g = generate_binary_tree(9);
  EXPECT_EQ(g.size(), 1023u);
  std::size_t leaves = 0;
  for (UserId u = 0; u < g.size(); ++u) leaves += g.leaders(u).size() == 1;
  EXPECT_EQ(leaves, 512u);
  expect_undirected(g);
}

TEST(BinaryTree, DepthOne) {
  const SocialGraph g = generate_binary_tree(1);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.leaders(0).size(), 2u);
  EXPECT_EQ(g.followers(0).size(), 2u);
}

TEST(BinaryTree, DepthTwoDegrees) {
  const SocialGraph g = generate_binary_tree(2);
  ASSERT_EQ(g.size(), 7u);
  EXPECT_EQ(g.leaders(0).size(), 2u);  // root
  for (UserId u : {1u, 2u}) EXPECT_EQ(g.leaders(u).size(), 3u);
  for (UserId u : {3u, 4u, 5u, 6u}) EXPECT_EQ(g.leaders(u).size(), 1u);
  EXPECT_TRUE(g.follows(5, 2));
  EXPECT_TRUE(g.follows(2, 5));
}

TEST(BinaryTree, RejectsDepthZero) { EXPECT_THROW(generate_binary_tree(0), InvalidInput); }

TEST(ScaleFree, CcdfSlopeNearMinusOnePointFive) {
  const std::size_t n = 50000;
  const SocialGraph g = generate_scale_free(n, 2.5, 11);
  expect_undirected(g);

  std::map<std::size_t, std::size_t> hist;
  for (UserId u = 0; u < n; ++u) ++hist[g.leaders(u).size()];
  // Least-squares fit of log P(deg >= k) against log k over 3 <= k <= 30.
  std::vector<double> xs, ys;
  for (std::size_t k = 3; k <= 30; ++k) {
    std::size_t at_least = 0;
    for (auto it = hist.lower_bound(k); it != hist.end(); ++it) at_least += it->second;
    xs.push_back(std::log(static_cast<double>(k)));
    ys.push_back(std::log(static_cast<double>(at_least) / static_cast<double>(n)));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -1.5, 0.15);
}

TEST(ScaleFree, TwoNodes) {
  const SocialGraph g = generate_scale_free(2, 2.5, 3);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_TRUE(g.edge_count() == 0 || g.edge_count() == 2);
}

TEST(ScaleFree, Deterministic) {
  EXPECT_EQ(generate_scale_free(5000, 2.5, 42).edges(), generate_scale_free(5000, 2.5, 42).edges());
  EXPECT_NE(generate_scale_free(5000, 2.5, 42).edges(), generate_scale_free(5000, 2.5, 43).edges());
}

TEST(ScaleFree, RejectsBadArguments) {
  EXPECT_THROW(generate_scale_free(1, 2.5, 0), InvalidInput);
  EXPECT_THROW(generate_scale_free(10, 2.0, 0), InvalidInput);
}

TEST(ErdosRenyi, MeanDegreeThree) {
  const std::size_t n = 50000;
  const SocialGraph g = generate_erdos_renyi(n, 3.0, 5);
  expect_undirected(g);
  const double mean = static_cast<double>(g.edge_count()) / static_cast<double>(n);
  EXPECT_NEAR(mean, 3.0, 0.1);
}

TEST(ErdosRenyi, ZeroMeanDegreeIsEmpty) {
  EXPECT_EQ(generate_erdos_renyi(100, 0.0, 1).edge_count(), 0u);
}

TEST(ErdosRenyi, Deterministic) {
  EXPECT_EQ(generate_erdos_renyi(3000, 3.0, 9).edges(), generate_erdos_renyi(3000, 3.0, 9).edges());
}

TEST(Complete, EveryoneFollowsEveryone) {
  const SocialGraph g = generate_complete(6);
  EXPECT_EQ(g.edge_count(), 30u);
  expect_undirected(g);
}

TEST(Ring, EdgeCountAndRingEdges) {
  const SocialGraph g = generate_ring(8, 4.0, 7);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.edge_count(), 32u);
  for (UserId u = 0; u < 8; ++u) {
    EXPECT_TRUE(g.follows(u, (u + 1) % 8));
    EXPECT_TRUE(g.follows((u + 1) % 8, u));
  }
  EXPECT_TRUE(g.is_consistent());
}
