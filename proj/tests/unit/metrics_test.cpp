#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "psirank/error.hpp"
#include "psirank/metrics.hpp"
#include "psirank/propagation.hpp"
#include "psirank/solver.hpp"

using namespace psirank;

namespace {

std::vector<InfluenceVectors> all_labels(const PropagationSystem& s) {
  std::vector<InfluenceVectors> out;
  for (UserId i = 0; i < s.size(); ++i) out.push_back(solve_dense(s, i));
  return out;
}

}  // namespace

TEST(PsiScores, TwoCycle) {
  const auto s = build_system(SocialGraph::from_edges(fixtures::two_cycle_edges(), 2),
                              ActivityRates::homogeneous(2, 1.0, 1.0));
  const auto t = psi_scores(all_labels(s), 2, true);
  EXPECT_NEAR(t.psi[0], 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(t.psi_tilde[0], 0.5, 1e-12);
  EXPECT_TRUE(t.complete);
}

TEST(PsiScores, ToyGraphHomogeneous) {
  const auto s = build_system(fixtures::toy_graph(), fixtures::toy_rates());
  const auto t = psi_scores(all_labels(s), 4, true);
  const std::vector<double> expected{0.331, 0.223, 0.223, 0.223};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(t.psi_tilde[k], expected[k], 1e-3);
  EXPECT_NEAR(std::accumulate(t.psi_tilde.begin(), t.psi_tilde.end(), 0.0), 1.0, 1e-12);
  EXPECT_LT(std::accumulate(t.psi.begin(), t.psi.end(), 0.0), 4.0 / 3.0);
  EXPECT_EQ(t.rank[0], 1u);
  EXPECT_EQ(t.ranking().front(), fixtures::A);
}

TEST(PsiScores, NoRepostingGivesUniformTilde) {
  const auto s = build_system(fixtures::toy_graph(), ActivityRates::homogeneous(4, 1.0, 0.0));
  const auto t = psi_scores(all_labels(s), 4, true);
  for (int k = 0; k < 4; ++k) {
    EXPECT_DOUBLE_EQ(t.psi[k], 0.0);
    EXPECT_DOUBLE_EQ(t.psi_tilde[k], 0.25);
  }
}

TEST(PsiScores, TildeIdentityHolds) {
  const auto s = build_system(fixtures::toy_graph(), fixtures::toy_rates());
  const auto all = all_labels(s);
  const auto t = psi_scores(all, 4, true);
  for (UserId i = 0; i < 4; ++i) {
    EXPECT_NEAR(t.psi_tilde[i], 0.75 * t.psi[i] + 0.25 * all[i].q[i], 1e-15);
  }
}

TEST(PsiScores, PartialLabelsAreFlagged) {
  const auto s = build_system(fixtures::toy_graph(), fixtures::toy_rates());
  const std::vector<InfluenceVectors> some{solve_dense(s, 2)};
  const auto t = psi_scores(some, 4);
  EXPECT_FALSE(t.complete);
  ASSERT_EQ(t.users.size(), 1u);
  EXPECT_EQ(t.users[0], 2u);
  EXPECT_THROW(psi_scores(some, 4, true), InvalidInput);
}

TEST(Rank, PaperOrderForAsymmetricScenario) {
  const std::vector<double> scores{0.234, 0.156, 0.451, 0.159};
  EXPECT_EQ(rank(scores), (std::vector<UserId>{fixtures::C, fixtures::A, fixtures::D, fixtures::B}));
}

TEST(Rank, TiesByAscendingId) {
  const std::vector<double> scores(5, 0.2);
  EXPECT_EQ(rank(scores), (std::vector<UserId>{0, 1, 2, 3, 4}));
}

TEST(Rank, SingleUser) { EXPECT_EQ(rank(std::vector<double>{0.7}), (std::vector<UserId>{0})); }

TEST(Rank, RejectsNaN) {
  const std::vector<double> scores{0.1, std::numeric_limits<double>::quiet_NaN()};
  EXPECT_THROW(rank(scores), InvalidInput);
}

TEST(Rank, ScaleInvariant) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> s(200), scaled(200);
  for (std::size_t k = 0; k < 200; ++k) {
    s[k] = u(rng);
    scaled[k] = 8.0 * s[k];
  }
  EXPECT_EQ(rank(s), rank(scaled));
}

TEST(CommonUsers, IdenticalRankings) {
  const std::vector<UserId> a{3, 1, 4, 0, 2};
  const std::vector<std::size_t> depths{1, 2, 3, 4, 5};
  for (double c : common_users_proportion(a, a, depths)) EXPECT_DOUBLE_EQ(c, 1.0);
}

TEST(CommonUsers, ReversedRankings) {
  std::vector<UserId> a(10);
  std::iota(a.begin(), a.end(), 0u);
  std::vector<UserId> b(a.rbegin(), a.rend());
  const std::vector<std::size_t> depths{5, 10};
  const auto c = common_users_proportion(a, b, depths);
  EXPECT_DOUBLE_EQ(c[0], 0.0);
  EXPECT_DOUBLE_EQ(c[1], 1.0);
}

TEST(CommonUsers, SevenOfTen) {
  std::vector<UserId> a(20);
  std::iota(a.begin(), a.end(), 0u);
  // b keeps 7 of a's top 10 in its own top 10.
  std::vector<UserId> b{0, 1, 2, 3, 4, 5, 6, 10, 11, 12, 7, 8, 9, 13, 14, 15, 16, 17, 18, 19};
  const std::vector<std::size_t> depths{10};
  EXPECT_DOUBLE_EQ(common_users_proportion(a, b, depths)[0], 0.7);
}

TEST(CommonUsers, RejectsBadDepthsAndMismatchedSets) {
  const std::vector<UserId> a{0, 1, 2};
  const std::vector<UserId> b{0, 1, 5};
  EXPECT_THROW(common_users_proportion(a, a, std::vector<std::size_t>{4}), InvalidInput);
  EXPECT_THROW(common_users_proportion(a, a, std::vector<std::size_t>{0}), InvalidInput);
  EXPECT_THROW(common_users_proportion(a, b, std::vector<std::size_t>{2}), InvalidInput);
}

TEST(RankScatter, IdenticalRankingsOnDiagonal) {
  const std::vector<UserId> a{2, 0, 1};
  for (const auto& p : rank_scatter(a, a)) EXPECT_EQ(p.rank_a, p.rank_b);
}

TEST(RankScatter, AdjacentSwap) {
  const std::vector<UserId> a{0, 1, 2, 3};
  const std::vector<UserId> b{0, 2, 1, 3};
  std::size_t off = 0;
  for (const auto& p : rank_scatter(a, b)) {
    if (p.rank_a != p.rank_b) {
      ++off;
      EXPECT_EQ(std::max(p.rank_a, p.rank_b) - std::min(p.rank_a, p.rank_b), 1u);
    }
  }
  EXPECT_EQ(off, 2u);
}

TEST(RankScatter, RandomPermutation) {
  std::vector<UserId> a(100);
  std::iota(a.begin(), a.end(), 0u);
  std::vector<UserId> b = a;
  std::shuffle(b.begin(), b.end(), std::mt19937_64(9));
  const auto pairs = rank_scatter(a, b);
  ASSERT_EQ(pairs.size(), 100u);
  std::vector<int> seen_a(101, 0), seen_b(101, 0);
  for (const auto& p : pairs) {
    ++seen_a[p.rank_a];
    ++seen_b[p.rank_b];
  }
  for (std::size_t r = 1; r <= 100; ++r) {
    EXPECT_EQ(seen_a[r], 1);
    EXPECT_EQ(seen_b[r], 1);
  }
  EXPECT_THROW(rank_scatter(a, std::vector<UserId>(a.begin(), a.end() - 1)), InvalidInput);
}

TEST(Pearson, MatchesTwoPassFormula) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> x(500), y(500);
  for (std::size_t k = 0; k < 500; ++k) {
    x[k] = 1e3 + g(rng);
    y[k] = 0.5 * x[k] + g(rng);
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / 500.0;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / 500.0;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < 500; ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  EXPECT_NEAR(pearson(x, y), sxy / std::sqrt(sxx * syy), 1e-12);
  EXPECT_TRUE(std::isnan(pearson(x, std::vector<double>(500, 1.0))));
}
