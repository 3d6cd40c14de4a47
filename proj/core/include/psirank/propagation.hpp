#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "psirank/graph.hpp"
#include "psirank/rates.hpp"
#include "psirank/types.hpp"

namespace psirank {

/// Sparse vector as parallel (index, value) arrays, indices ascending.
struct SparseVector {
  std::vector<UserId> index;
  std::vector<double> value;
};

/// The linear system p_i = A p_i + b_i, q_i = C p_i + d_i for one graph and
/// one set of activity rates:
///
///   a[j][k] = mu_k / inflow_j           for k in L(j) with mu_k > 0
///   b_i[j]  = lambda_i / inflow_j       for j in F(i)
///   c[j]    = mu_j / (lambda_j + mu_j)  (C is diagonal)
///   d_i[j]  = lambda_i / (lambda_i + mu_i) at j = i only
///
/// with inflow_j = sum over l in L(j) of (lambda_l + mu_l), the total arrival
/// rate on j's Newsfeed. Rows of users without leaders are identically zero.
/// Immutable once built and safe to share between threads.
class PropagationSystem {
 public:
  /// Throws InvalidInput on a size mismatch or invalid rates.
  static PropagationSystem build(SocialGraph graph, ActivityRates rates);

  std::size_t size() const noexcept { return graph_.size(); }
  const SocialGraph& graph() const noexcept { return graph_; }
  const ActivityRates& rates() const noexcept { return rates_; }

  /// Row j of A: leader ids and weights.
  std::span<const UserId> row_columns(UserId j) const {
    return {columns_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }
  std::span<const double> row_values(UserId j) const {
    return {values_.data() + offsets_[j], offsets_[j + 1] - offsets_[j]};
  }
  std::size_t nonzeros() const noexcept { return values_.size(); }

  /// r(j), the sum of row j of A.
  std::span<const double> row_sums() const noexcept { return row_sums_; }
  std::span<const double> inflow() const noexcept { return inflow_; }
  std::span<const double> c_diag() const noexcept { return c_diag_; }

  bool has_leaders(UserId j) const { return !graph_.leaders(j).empty(); }
  std::size_t leaderless_count() const noexcept { return leaderless_; }

  SparseVector b(UserId label) const;
  double d(UserId label) const;

  /// y = A x.
  void multiply(std::span<const double> x, std::span<double> y) const;

 private:
  SocialGraph graph_;
  ActivityRates rates_;
  std::vector<std::size_t> offsets_;
  std::vector<UserId> columns_;
  std::vector<double> values_;
  std::vector<double> row_sums_;
  std::vector<double> inflow_;
  std::vector<double> c_diag_;
  std::size_t leaderless_ = 0;
};

/// Same as PropagationSystem::build.
PropagationSystem build_system(SocialGraph graph, ActivityRates rates);

/// Row-sum bounds on the spectral radius of A.
struct SpectralBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// (min r(j), max r(j)) over users that have at least one leader; (0, 0) when
/// nobody has a leader.
SpectralBounds spectral_bounds(const PropagationSystem& system);

}  // namespace psirank
