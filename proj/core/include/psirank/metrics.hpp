#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psirank/solver.hpp"
#include "psirank/types.hpp"

namespace psirank {

/// Influence scores of a set of labels.
///   psi_i       = 1/(N-1) * sum over n != i of q_i^(n)
///   psi_tilde_i = 1/N     * sum over n       of q_i^(n)
/// `rank` holds the 1-based position of each entry when ordered by descending
/// psi (ties by ascending user id). `complete` is false when only a subset of
/// labels was scored, in which case psi_tilde does not sum to one.
struct ScoreTable {
  std::vector<UserId> users;
  std::vector<double> psi;
  std::vector<double> psi_tilde;
  std::vector<std::size_t> rank;
  bool complete = true;

  /// Users ordered by rank.
  std::vector<UserId> ranking() const;
};

/// Streams per-label Wall vectors into per-label sums so that all-label
/// scoring never holds N^2 values.
class ScoreAccumulator {
 public:
  explicit ScoreAccumulator(std::size_t n_users);

  void add(UserId label, std::span<const double> q);
  void add(const InfluenceVectors& v) { add(v.label, v.q); }

  std::size_t labels_seen() const noexcept { return labels_.size(); }

  /// Entries come out in ascending user id. With require_complete, throws
  /// InvalidInput if some user was never added.
  ScoreTable finish(bool require_complete = false) const;

 private:
  std::size_t n_users_;
  std::vector<UserId> labels_;
  std::vector<double> total_;  // sum over n of q_label^(n), by insertion
  std::vector<double> self_;   // q_label^(label)
  std::vector<char> seen_;
};

ScoreTable psi_scores(std::span<const InfluenceVectors> all_q, std::size_t n_users,
                      bool require_complete = false);

/// Positions of `scores` (user ids 0..n-1) by descending score, ties by
/// ascending id. Throws InvalidInput on NaN.
std::vector<UserId> rank(std::span<const double> scores);

/// Same for an explicit id list parallel to `scores`.
std::vector<UserId> rank(std::span<const UserId> users, std::span<const double> scores);

/// C_X = |top-X of a  intersect  top-X of b| / X for each X in depths. Both
/// rankings must be permutations of the same user set; a depth of 0 or above
/// the list length throws InvalidInput.
std::vector<double> common_users_proportion(std::span<const UserId> list_a,
                                            std::span<const UserId> list_b,
                                            std::span<const std::size_t> depths);

struct RankPair {
  UserId user;
  std::size_t rank_a;  // 1-based
  std::size_t rank_b;

  friend bool operator==(const RankPair&, const RankPair&) = default;
};

/// One (rank in a, rank in b) point per user, ascending user id. Throws
/// InvalidInput when the two lists do not cover the same users.
std::vector<RankPair> rank_scatter(std::span<const UserId> list_a, std::span<const UserId> list_b);

/// Sample Pearson correlation, single pass. NaN when either input is constant.
double pearson(std::span<const double> x, std::span<const double> y);

}  // namespace psirank
