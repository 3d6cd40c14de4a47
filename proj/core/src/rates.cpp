#include "psirank/rates.hpp"

#include <cmath>
#include <string>

#include "psirank/error.hpp"

namespace psirank {

ActivityRates ActivityRates::homogeneous(std::size_t n_users, double lambda, double mu) {
  return {std::vector<double>(n_users, lambda), std::vector<double>(n_users, mu)};
}

void ActivityRates::validate() const {
  if (lambda.size() != mu.size()) {
    throw InvalidInput("lambda and mu have different lengths (" + std::to_string(lambda.size()) +
                       " vs " + std::to_string(mu.size()) + ")");
  }
  for (std::size_t n = 0; n < lambda.size(); ++n) {
    if (!std::isfinite(lambda[n]) || !std::isfinite(mu[n]) || lambda[n] < 0.0 || mu[n] < 0.0) {
      throw InvalidInput("user " + std::to_string(n) + " has a negative or non-finite rate");
    }
    if (lambda[n] + mu[n] <= 0.0) {
      throw InvalidInput("user " + std::to_string(n) + " has no activity (lambda + mu = 0)");
    }
  }
}

}  // namespace psirank
