#include "psirank/propagation.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "psirank/error.hpp"

namespace psirank {

PropagationSystem PropagationSystem::build(SocialGraph graph, ActivityRates rates) {
  if (rates.size() != graph.size()) {
    throw InvalidInput("rates cover " + std::to_string(rates.size()) + " users but the graph has " +
                       std::to_string(graph.size()));
  }
  rates.validate();

  PropagationSystem s;
  const std::size_t n = graph.size();
  s.offsets_.assign(n + 1, 0);
  s.row_sums_.assign(n, 0.0);
  s.inflow_.assign(n, 0.0);
  s.c_diag_.resize(n);
  s.columns_.reserve(graph.edge_count());
  s.values_.reserve(graph.edge_count());

  for (UserId j = 0; j < n; ++j) {
    const double activity = rates.lambda[j] + rates.mu[j];
    s.c_diag_[j] = rates.mu[j] / activity;

    auto leaders = graph.leaders(j);
    if (leaders.empty()) ++s.leaderless_;
    double inflow = 0.0;
    for (UserId k : leaders) inflow += rates.lambda[k] + rates.mu[k];
    s.inflow_[j] = inflow;

    double row_sum = 0.0;
    for (UserId k : leaders) {
      if (rates.mu[k] <= 0.0) continue;
      const double a = rates.mu[k] / inflow;
      s.columns_.push_back(k);
      s.values_.push_back(a);
      row_sum += a;
    }
    s.row_sums_[j] = row_sum;
    s.offsets_[j + 1] = s.values_.size();
  }

  s.graph_ = std::move(graph);
  s.rates_ = std::move(rates);
  return s;
}

SparseVector PropagationSystem::b(UserId label) const {
  SparseVector out;
  const double lambda = rates_.lambda.at(label);
  if (lambda <= 0.0) return out;
  auto followers = graph_.followers(label);
  out.index.reserve(followers.size());
  out.value.reserve(followers.size());
  for (UserId j : followers) {
    out.index.push_back(j);
    out.value.push_back(lambda / inflow_[j]);
  }
  return out;
}

double PropagationSystem::d(UserId label) const {
  const double lambda = rates_.lambda.at(label);
  return lambda / (lambda + rates_.mu[label]);
}

void PropagationSystem::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t e = offsets_[j]; e < offsets_[j + 1]; ++e) acc += values_[e] * x[columns_[e]];
    y[j] = acc;
  }
}

PropagationSystem build_system(SocialGraph graph, ActivityRates rates) {
  return PropagationSystem::build(std::move(graph), std::move(rates));
}

SpectralBounds spectral_bounds(const PropagationSystem& system) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  bool any = false;
  for (UserId j = 0; j < system.size(); ++j) {
    if (!system.has_leaders(j)) continue;
    any = true;
    lo = std::min(lo, system.row_sums()[j]);
    hi = std::max(hi, system.row_sums()[j]);
  }
  if (!any) return {};
  return {lo, hi};
}

}  // namespace psirank
