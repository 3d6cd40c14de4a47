#include "psirank/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psirank/error.hpp"

namespace psirank {

PageRankResult pagerank(const SocialGraph& graph, double beta, double tol, std::size_t max_iter) {
  if (!(beta >= 0.0 && beta < 1.0)) throw InvalidInput("PageRank damping must lie in [0, 1)");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");

  const std::size_t n = graph.size();
  PageRankResult out;
  if (n == 0) return out;

  const double uniform = 1.0 / static_cast<double>(n);
  std::vector<double> share(n);  // pi_j / |L(j)|
  for (UserId j = 0; j < n; ++j) {
    if (graph.leaders(j).empty()) ++out.dangling;
  }
  out.score.assign(n, uniform);
  std::vector<double> next(n);

  for (std::size_t t = 1; t <= max_iter; ++t) {
    double dangling_mass = 0.0;
    for (UserId j = 0; j < n; ++j) {
      const auto deg = graph.leaders(j).size();
      if (deg == 0) {
        dangling_mass += out.score[j];
        share[j] = 0.0;
      } else {
        share[j] = out.score[j] / static_cast<double>(deg);
      }
    }
    const double base = (1.0 - beta) * uniform + beta * dangling_mass * uniform;
    double step = 0.0;
    for (UserId i = 0; i < n; ++i) {
      double acc = 0.0;
      for (UserId j : graph.followers(i)) acc += share[j];
      next[i] = base + beta * acc;
      step = std::max(step, std::abs(next[i] - out.score[i]));
    }
    out.score.swap(next);
    out.iterations = t;
    out.residual = step;
    if (step <= tol) return out;
  }
  throw ConvergenceError("PageRank did not converge after " + std::to_string(max_iter) + " iterations",
                         out.residual, out.iterations);
}

}  // namespace psirank
