#include "psirank/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "psirank/error.hpp"

namespace psirank {

std::vector<UserId> ScoreTable::ranking() const {
  std::vector<UserId> out(users.size());
  for (std::size_t e = 0; e < users.size(); ++e) out[rank[e] - 1] = users[e];
  return out;
}

ScoreAccumulator::ScoreAccumulator(std::size_t n_users) : n_users_(n_users), seen_(n_users, 0) {}

void ScoreAccumulator::add(UserId label, std::span<const double> q) {
  if (label >= n_users_) throw InvalidInput("label " + std::to_string(label) + " out of range");
  if (q.size() != n_users_) throw InvalidInput("Wall vector length does not match the user count");
  if (seen_[label]) throw InvalidInput("label " + std::to_string(label) + " scored twice");
  seen_[label] = 1;
  labels_.push_back(label);
  double sum = 0.0;
  for (double v : q) sum += v;
  total_.push_back(sum);
  self_.push_back(q[label]);
}

ScoreTable ScoreAccumulator::finish(bool require_complete) const {
  const bool complete = labels_.size() == n_users_;
  if (require_complete && !complete) {
    auto missing = std::find(seen_.begin(), seen_.end(), 0) - seen_.begin();
    throw InvalidInput("label " + std::to_string(missing) + " missing from a normalized scoring");
  }

  std::vector<std::size_t> order(labels_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return labels_[a] < labels_[b]; });

  const double n = static_cast<double>(n_users_);
  ScoreTable t;
  t.complete = complete;
  for (std::size_t e : order) {
    t.users.push_back(labels_[e]);
    t.psi.push_back(n_users_ > 1 ? (total_[e] - self_[e]) / (n - 1.0) : 0.0);
    t.psi_tilde.push_back(total_[e] / n);
  }

  auto by_rank = rank(t.users, t.psi);
  std::vector<std::size_t> position(n_users_, 0);
  for (std::size_t r = 0; r < by_rank.size(); ++r) position[by_rank[r]] = r + 1;
  t.rank.reserve(t.users.size());
  for (UserId u : t.users) t.rank.push_back(position[u]);
  return t;
}

ScoreTable psi_scores(std::span<const InfluenceVectors> all_q, std::size_t n_users,
                      bool require_complete) {
  ScoreAccumulator acc(n_users);
  for (const auto& v : all_q) acc.add(v);
  return acc.finish(require_complete);
}

std::vector<UserId> rank(std::span<const UserId> users, std::span<const double> scores) {
  if (users.size() != scores.size()) throw InvalidInput("rank: ids and scores differ in length");
  for (std::size_t e = 0; e < scores.size(); ++e) {
    if (std::isnan(scores[e])) throw InvalidInput("rank: NaN score for user " + std::to_string(users[e]));
  }
  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return users[a] < users[b];
  });
  std::vector<UserId> out;
  out.reserve(order.size());
  for (std::size_t e : order) out.push_back(users[e]);
  return out;
}

std::vector<UserId> rank(std::span<const double> scores) {
  std::vector<UserId> ids(scores.size());
  std::iota(ids.begin(), ids.end(), UserId{0});
  return rank(ids, scores);
}

namespace {

// Dense index over the ids of two rankings; throws unless they hold the same
// users exactly once each.
std::size_t check_same_users(std::span<const UserId> a, std::span<const UserId> b) {
  if (a.size() != b.size()) throw InvalidInput("rankings have different lengths");
  std::size_t bound = 0;
  for (UserId u : a) bound = std::max<std::size_t>(bound, std::size_t{u} + 1);
  std::vector<int> tally(bound, 0);
  for (UserId u : a) {
    if (tally[u]++ != 0) throw InvalidInput("user " + std::to_string(u) + " repeated in a ranking");
  }
  for (UserId u : b) {
    if (u >= bound || tally[u] != 1) {
      throw InvalidInput("rankings cover different user sets (user " + std::to_string(u) + ")");
    }
    tally[u] = 2;
  }
  return bound;
}

}  // namespace

std::vector<double> common_users_proportion(std::span<const UserId> list_a,
                                            std::span<const UserId> list_b,
                                            std::span<const std::size_t> depths) {
  const std::size_t bound = check_same_users(list_a, list_b);
  for (std::size_t x : depths) {
    if (x == 0 || x > list_a.size()) {
      throw InvalidInput("depth " + std::to_string(x) + " outside [1, " + std::to_string(list_a.size()) + "]");
    }
  }

  std::vector<std::size_t> order(depths.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto l, auto r) { return depths[l] < depths[r]; });

  std::vector<char> in_a(bound, 0), in_b(bound, 0);
  std::vector<double> out(depths.size());
  std::size_t overlap = 0;
  std::size_t x = 0;
  for (std::size_t k : order) {
    for (; x < depths[k]; ++x) {
      in_a[list_a[x]] = 1;
      if (in_b[list_a[x]]) ++overlap;
      in_b[list_b[x]] = 1;
      if (in_a[list_b[x]]) ++overlap;
    }
    out[k] = static_cast<double>(overlap) / static_cast<double>(depths[k]);
  }
  return out;
}

std::vector<RankPair> rank_scatter(std::span<const UserId> list_a, std::span<const UserId> list_b) {
  const std::size_t bound = check_same_users(list_a, list_b);
  std::vector<std::size_t> ra(bound, 0), rb(bound, 0);
  for (std::size_t r = 0; r < list_a.size(); ++r) {
    ra[list_a[r]] = r + 1;
    rb[list_b[r]] = r + 1;
  }
  std::vector<RankPair> out;
  out.reserve(list_a.size());
  for (UserId u = 0; u < bound; ++u) {
    if (ra[u] != 0) out.push_back({u, ra[u], rb[u]});
  }
  return out;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidInput("pearson: inputs differ in length");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  // Welford-style running means and co-moments.
  double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    const double dx = x[k] - mx;
    const double dy = y[k] - my;
    mx += dx / n;
    my += dy / n;
    sxx += dx * (x[k] - mx);
    syy += dy * (y[k] - my);
    sxy += dx * (y[k] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace psirank
