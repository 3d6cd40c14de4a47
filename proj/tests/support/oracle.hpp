#pragma once

// Dense reference implementations used as test oracles. They rebuild every
// quantity straight from the edge list and rates with plain Gaussian
// elimination, sharing no code with the library's solvers.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "psirank/types.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<double>>;

inline std::vector<double> gauss_solve(Matrix m, std::vector<double> rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
    }
    if (std::abs(m[pivot][col]) < 1e-300) throw std::runtime_error("oracle: singular matrix");
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = rhs[r];
    for (std::size_t c = r + 1; c < n; ++c) s -= m[r][c] * x[c];
    x[r] = s / m[r][r];
  }
  return x;
}

struct Solution {
  std::vector<double> p;
  std::vector<double> q;
};

/// p_i and q_i for one label from the Newsfeed balance equations written out
/// per user: for every j with leaders,
///   p[j] * sum_{k in L(j)} (lambda_k + mu_k) = lambda_i [i in L(j)] + sum_{k in L(j)} mu_k p[k].
inline Solution influence(std::size_t n, const std::vector<psirank::Edge>& edges,
                          const std::vector<double>& lambda, const std::vector<double>& mu,
                          psirank::UserId label) {
  std::vector<std::vector<psirank::UserId>> leaders(n);
  for (const auto& e : edges) leaders[e.follower].push_back(e.leader);

  Matrix m(n, std::vector<double>(n, 0.0));
  std::vector<double> rhs(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (leaders[j].empty()) {
      m[j][j] = 1.0;
      continue;
    }
    double inflow = 0.0;
    for (auto k : leaders[j]) inflow += lambda[k] + mu[k];
    m[j][j] = inflow;
    for (auto k : leaders[j]) {
      m[j][k] -= mu[k];
      if (k == label) rhs[j] += lambda[k];
    }
  }
  Solution s;
  s.p = gauss_solve(std::move(m), std::move(rhs));
  s.q.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.q[j] = mu[j] / (lambda[j] + mu[j]) * s.p[j];
    if (j == label) s.q[j] += lambda[j] / (lambda[j] + mu[j]);
  }
  return s;
}

/// psi_tilde for every user from all-label oracle solves.
inline std::vector<double> psi_tilde(std::size_t n, const std::vector<psirank::Edge>& edges,
                                     const std::vector<double>& lambda,
                                     const std::vector<double>& mu) {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto s = influence(n, edges, lambda, mu, static_cast<psirank::UserId>(i));
    for (double v : s.q) out[i] += v / static_cast<double>(n);
  }
  return out;
}

/// PageRank as the exact solution of (I - beta W) pi = (1 - beta) e / N with
/// dangling mass spread uniformly, via the equivalent dense Google matrix.
inline std::vector<double> pagerank(std::size_t n, const std::vector<psirank::Edge>& edges,
                                    double beta) {
  std::vector<std::size_t> out_degree(n, 0);
  for (const auto& e : edges) ++out_degree[e.follower];
  Matrix g(n, std::vector<double>(n, 0.0));
  for (const auto& e : edges) g[e.leader][e.follower] += 1.0 / static_cast<double>(out_degree[e.follower]);
  for (std::size_t k = 0; k < n; ++k) {
    if (out_degree[k] == 0) {
      for (std::size_t r = 0; r < n; ++r) g[r][k] = 1.0 / static_cast<double>(n);
    }
  }
  Matrix m(n, std::vector<double>(n, 0.0));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m[r][c] = (r == c ? 1.0 : 0.0) - beta * g[r][c];
  }
  return gauss_solve(std::move(m), std::vector<double>(n, (1.0 - beta) / static_cast<double>(n)));
}

}  // namespace oracle
