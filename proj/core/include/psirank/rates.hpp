#pragma once

#include <cstddef>
#include <vector>

namespace psirank {

/// Per-user self-posting rate (lambda) and re-posting rate (mu), in posts per
/// unit time. A valid set has lambda, mu >= 0 and lambda + mu > 0 per user.
struct ActivityRates {
  std::vector<double> lambda;
  std::vector<double> mu;

  std::size_t size() const noexcept { return lambda.size(); }

  static ActivityRates homogeneous(std::size_t n_users, double lambda, double mu);

  /// Throws InvalidInput naming the first offending user.
  void validate() const;
};

}  // namespace psirank
