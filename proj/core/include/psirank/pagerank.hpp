#pragma once

#include <cstddef>
#include <vector>

#include "psirank/graph.hpp"

namespace psirank {

struct PageRankResult {
  std::vector<double> score;
  std::size_t iterations = 0;
  double residual = 0.0;
  std::size_t dangling = 0;  // users without leaders
};

/// Power iteration of pi = beta W pi + (1 - beta) e / N, where W = L D_out^-1
/// spreads each user's mass evenly over the users it follows. Mass of users
/// without leaders is spread uniformly over everybody. Starts from the uniform
/// vector and stops when the infinity-norm step is <= tol; throws
/// ConvergenceError after max_iter steps. Requires 0 <= beta < 1.
PageRankResult pagerank(const SocialGraph& graph, double beta, double tol = 1e-12,
                        std::size_t max_iter = 100000);

}  // namespace psirank
