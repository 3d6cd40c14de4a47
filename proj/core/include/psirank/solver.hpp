#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "psirank/propagation.hpp"
#include "psirank/types.hpp"

namespace psirank {

/// Newsfeed (p) and Wall (q) probabilities of posts with origin `label` on
/// every user's lists.
struct InfluenceVectors {
  UserId label = 0;
  std::vector<double> p;
  std::vector<double> q;
  std::size_t iterations = 0;  // 0 for direct solves
  double residual = 0.0;       // last infinity-norm step
  /// False when max r(j) = 1, i.e. convergence is not guaranteed by the
  /// row-sum bound.
  bool certified = true;
  std::vector<double> residual_history;  // filled when requested
};

struct SolveOptions {
  double tol = 1e-10;
  /// 0 selects 10 * ceil(log(tol) / log(max r(j))), capped at 1e5.
  std::size_t max_iter = 0;
  bool record_history = false;
};

inline constexpr std::size_t kIterationHardCap = 100000;
inline constexpr std::size_t kDefaultDenseCap = 2000;

std::size_t default_iteration_cap(double tol, double max_row_sum);

/// Fixed-point iteration p(t) = A p(t-1) + b_i from p(0) = 0, stopped when
/// the infinity-norm step drops to `tol` and, for systems with max r(j) < 1,
/// the implied distance to the fixed point step * r / (1 - r) does too. Throws ConvergenceError carrying the
/// last step at the iteration cap, or earlier when an uncertified system
/// (max r(j) = 1) stops contracting.
InfluenceVectors solve_iterative(const PropagationSystem& system, UserId label,
                                 const SolveOptions& options = {});

/// Direct solve p_i = (I - A)^-1 b_i through one LU factorization of (I - A)
/// that is reused for every label. Refuses systems larger than `max_users`.
/// Throws SingularSystemError when (I - A) is numerically singular.
class DenseSolver {
 public:
  explicit DenseSolver(const PropagationSystem& system, std::size_t max_users = kDefaultDenseCap);
  ~DenseSolver();
  DenseSolver(DenseSolver&&) noexcept;
  DenseSolver& operator=(DenseSolver&&) noexcept;

  /// Thread-safe.
  InfluenceVectors solve(UserId label) const;

 private:
  struct Factorization;
  const PropagationSystem* system_;
  std::unique_ptr<Factorization> lu_;
};

InfluenceVectors solve_dense(const PropagationSystem& system, UserId label,
                             std::size_t max_users = kDefaultDenseCap);

/// Per-user |p_i^(j) - tau_j / (1 + tau_j)| where tau_j is the birth-death
/// ratio of j's Newsfeed chain evaluated at the solved p values of j's
/// leaders. Zero for users without leaders.
std::vector<double> birth_death_residuals(const PropagationSystem& system,
                                          const InfluenceVectors& solved);

enum class SolveMethod { kIterative, kDense };

/// Solves every label in `labels` using `workers` threads and hands each result
/// to `sink` on the calling thread in the order of `labels`, so the output
/// does not depend on the worker count.
void solve_labels(const PropagationSystem& system, std::span<const UserId> labels,
                  const SolveOptions& options, SolveMethod method, std::size_t workers,
                  const std::function<void(InfluenceVectors&&)>& sink);

}  // namespace psirank
