#include "psirank/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>

#include "psirank/error.hpp"

namespace psirank {

namespace {

void check_label(const PropagationSystem& system, UserId label) {
  if (label >= system.size()) {
    throw InvalidInput("label " + std::to_string(label) + " is not a user of this system");
  }
}

void fill_wall(const PropagationSystem& system, InfluenceVectors& out) {
  const auto c = system.c_diag();
  out.q.resize(out.p.size());
  for (std::size_t j = 0; j < out.p.size(); ++j) out.q[j] = c[j] * out.p[j];
  out.q[out.label] += system.d(out.label);
}

}  // namespace

std::size_t default_iteration_cap(double tol, double max_row_sum) {
  if (max_row_sum <= 0.0) return 10;
  if (max_row_sum >= 1.0) return kIterationHardCap;
  const double steps = std::ceil(std::log(tol) / std::log(max_row_sum));
  if (!(steps < static_cast<double>(kIterationHardCap) / 10.0)) return kIterationHardCap;
  return std::max<std::size_t>(10, 10 * static_cast<std::size_t>(std::max(1.0, steps)));
}

InfluenceVectors solve_iterative(const PropagationSystem& system, UserId label,
                                 const SolveOptions& options) {
  check_label(system, label);
  if (!(options.tol > 0.0)) throw InvalidInput("tolerance must be positive");

  const double max_r = spectral_bounds(system).upper;
  const bool certified = max_r < 1.0;
  const std::size_t cap = options.max_iter > 0 ? options.max_iter : default_iteration_cap(options.tol, max_r);

  // With contraction factor r the distance to the fixed point is at most
  // step * r / (1 - r), so the step threshold is tightened until that bound
  // is within tol as well.
  const double threshold =
      certified && max_r > 0.5 ? options.tol * (1.0 - max_r) / max_r : options.tol;

  const std::size_t n = system.size();
  const SparseVector b = system.b(label);

  InfluenceVectors out;
  out.label = label;
  out.certified = certified;
  out.p.assign(n, 0.0);
  std::vector<double> next(n);

  // Stagnation window for uncertified systems.
  constexpr std::size_t kWindow = 1000;
  double window_start = std::numeric_limits<double>::infinity();

  for (std::size_t t = 1; t <= cap; ++t) {
    system.multiply(out.p, next);
    for (std::size_t e = 0; e < b.index.size(); ++e) next[b.index[e]] += b.value[e];

    double step = 0.0;
    for (std::size_t j = 0; j < n; ++j) step = std::max(step, std::abs(next[j] - out.p[j]));
    out.p.swap(next);
    out.iterations = t;
    out.residual = step;
    if (options.record_history) out.residual_history.push_back(step);

    if (step <= threshold) {
      fill_wall(system, out);
      return out;
    }
    if (!certified && t % kWindow == 0) {
      if (step > 0.5 * window_start) {
        throw ConvergenceError("label " + std::to_string(label) +
                                   ": residual stagnated on a system with max row sum 1",
                               step, t);
      }
      window_start = step;
    }
  }
  throw ConvergenceError("label " + std::to_string(label) + ": no convergence after " +
                             std::to_string(cap) + " iterations",
                         out.residual, out.iterations);
}

struct DenseSolver::Factorization {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
};

DenseSolver::DenseSolver(const PropagationSystem& system, std::size_t max_users)
    : system_(&system), lu_(std::make_unique<Factorization>()) {
  const std::size_t n = system.size();
  if (n > max_users) {
    throw InvalidInput("dense solve refused: " + std::to_string(n) + " users exceed the cap of " +
                       std::to_string(max_users));
  }
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(nn, nn);
  for (UserId j = 0; j < n; ++j) {
    auto cols = system.row_columns(j);
    auto vals = system.row_values(j);
    for (std::size_t e = 0; e < cols.size(); ++e) m(j, cols[e]) -= vals[e];
  }
  if (n > 0) {
    lu_->lu.compute(m);
    const double rcond = lu_->lu.rcond();
    if (!(rcond > 1e3 * std::numeric_limits<double>::epsilon())) {
      throw SingularSystemError(
          "I - A is singular (spectral radius of A is 1): some cycle of the leader graph has no "
          "leader with a positive self-post rate");
    }
  }
}

DenseSolver::~DenseSolver() = default;
DenseSolver::DenseSolver(DenseSolver&&) noexcept = default;
DenseSolver& DenseSolver::operator=(DenseSolver&&) noexcept = default;

InfluenceVectors DenseSolver::solve(UserId label) const {
  check_label(*system_, label);
  const std::size_t n = system_->size();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  const SparseVector b = system_->b(label);
  for (std::size_t e = 0; e < b.index.size(); ++e) rhs(b.index[e]) = b.value[e];

  InfluenceVectors out;
  out.label = label;
  out.certified = true;
  Eigen::VectorXd p = lu_->lu.solve(rhs);
  out.p.assign(p.data(), p.data() + n);
  fill_wall(*system_, out);
  return out;
}

InfluenceVectors solve_dense(const PropagationSystem& system, UserId label, std::size_t max_users) {
  return DenseSolver(system, max_users).solve(label);
}

std::vector<double> birth_death_residuals(const PropagationSystem& system,
                                          const InfluenceVectors& solved) {
  const auto& graph = system.graph();
  const auto& rates = system.rates();
  const UserId i = solved.label;
  std::vector<double> residual(system.size(), 0.0);

  for (UserId j = 0; j < system.size(); ++j) {
    auto leaders = graph.leaders(j);
    if (leaders.empty()) continue;
    // Birth rate over death rate of the label-i count on j's Newsfeed.
    double birth = 0.0;
    double death = 0.0;
    for (UserId k : leaders) {
      const double pk = solved.p[k];
      birth += rates.mu[k] * pk;
      death += rates.mu[k] * (1.0 - pk);
      if (k == i) {
        birth += rates.lambda[k];
      } else {
        death += rates.lambda[k];
      }
    }
    // tau / (1 + tau) with tau = birth / death, finite even when death = 0.
    const double stationary_mean = birth + death > 0.0 ? birth / (birth + death) : 0.0;
    residual[j] = std::abs(solved.p[j] - stationary_mean);
  }
  return residual;
}

void solve_labels(const PropagationSystem& system, std::span<const UserId> labels,
                  const SolveOptions& options, SolveMethod method, std::size_t workers,
                  const std::function<void(InfluenceVectors&&)>& sink) {
  workers = std::max<std::size_t>(1, workers);
  std::optional<DenseSolver> dense;
  if (method == SolveMethod::kDense) dense.emplace(system);

  auto solve_one = [&](UserId label) {
    return dense ? dense->solve(label) : solve_iterative(system, label, options);
  };

  if (workers == 1) {
    for (UserId label : labels) sink(solve_one(label));
    return;
  }

  const std::size_t batch = std::max<std::size_t>(64, 8 * workers);
  std::vector<std::optional<InfluenceVectors>> slots;
  std::vector<std::exception_ptr> errors;

  for (std::size_t begin = 0; begin < labels.size(); begin += batch) {
    const std::size_t count = std::min(batch, labels.size() - begin);
    slots.assign(count, std::nullopt);
    errors.assign(count, nullptr);
    std::atomic<std::size_t> cursor{0};

    auto work = [&] {
      for (std::size_t k = cursor++; k < count; k = cursor++) {
        try {
          slots[k].emplace(solve_one(labels[begin + k]));
        } catch (...) {
          errors[k] = std::current_exception();
        }
      }
    };
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w + 1 < std::min(workers, count); ++w) pool.emplace_back(work);
      work();
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (errors[k]) std::rethrow_exception(errors[k]);
      sink(std::move(*slots[k]));
    }
  }
}

}  // namespace psirank
