#include "psirank/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace psirank {

namespace {

void add_undirected(std::vector<Edge>& edges, UserId a, UserId b) {
  edges.push_back({a, b});
  edges.push_back({b, a});
}

}  // namespace

SocialGraph generate_binary_tree(int depth) {
  if (depth < 1) throw InvalidInput("binary tree depth must be >= 1, got " + std::to_string(depth));
  const std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<Edge> edges;
  edges.reserve(2 * (n - 1));
  for (std::size_t child = 1; child < n; ++child) {
    add_undirected(edges, static_cast<UserId>((child - 1) / 2), static_cast<UserId>(child));
  }
  return SocialGraph::from_edges(edges, n);
}

SocialGraph generate_scale_free(std::size_t n, double exponent, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("scale-free graph needs n >= 2");
  if (!(exponent > 2.0)) throw InvalidInput("scale-free exponent must be > 2");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  // Inverse transform of a continuous Pareto(1, exponent - 1), floored: this
  // gives exactly P(deg >= k) = k^-(exponent - 1) on the integers.
  const double inv_tail = -1.0 / (exponent - 1.0);
  const auto cap = static_cast<double>(n - 1);
  std::vector<std::size_t> degree(n);
  std::size_t stubs = 0;
  for (auto& d : degree) {
    const double u = 1.0 - uniform(rng);  // (0, 1]
    d = static_cast<std::size_t>(std::min(std::floor(std::pow(u, inv_tail)), cap));
    stubs += d;
  }
  if (stubs % 2 == 1) {
    auto it = std::find_if(degree.begin(), degree.end(), [&](std::size_t d) { return d < n - 1; });
    ++*it;
    ++stubs;
  }

  std::vector<UserId> stub_owner;
  stub_owner.reserve(stubs);
  for (std::size_t u = 0; u < n; ++u) {
    stub_owner.insert(stub_owner.end(), degree[u], static_cast<UserId>(u));
  }
  std::shuffle(stub_owner.begin(), stub_owner.end(), rng);

  std::vector<Edge> edges;
  edges.reserve(stubs);
  for (std::size_t s = 0; s + 1 < stub_owner.size(); s += 2) {
    if (stub_owner[s] == stub_owner[s + 1]) continue;
    add_undirected(edges, stub_owner[s], stub_owner[s + 1]);
  }
  return SocialGraph::from_edges(edges, n);
}

SocialGraph generate_erdos_renyi(std::size_t n, double mean_degree, std::uint64_t seed) {
  if (n < 2) throw InvalidInput("Erdos-Renyi graph needs n >= 2");
  const double max_degree = static_cast<double>(n - 1);
  if (!(mean_degree >= 0.0) || !(mean_degree < max_degree)) {
    throw InvalidInput("Erdos-Renyi mean degree must lie in [0, n - 1)");
  }
  std::vector<Edge> edges;
  const double p = mean_degree / max_degree;
  if (p > 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const double log_q = std::log1p(-p);
    edges.reserve(static_cast<std::size_t>(1.1 * mean_degree * static_cast<double>(n)) + 16);

    // Batagelj & Brandes: walk the lower triangle (v, w), w < v, skipping
    // geometrically distributed gaps between present edges.
    const auto nn = static_cast<std::int64_t>(n);
    std::int64_t v = 1;
    std::int64_t w = -1;
    while (v < nn) {
      const double r = uniform(rng);
      w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) add_undirected(edges, static_cast<UserId>(v), static_cast<UserId>(w));
    }
  }
  return SocialGraph::from_edges(edges, n);
}

SocialGraph generate_complete(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n > 0 ? n - 1 : 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (j != k) edges.push_back({static_cast<UserId>(j), static_cast<UserId>(k)});
    }
  }
  return SocialGraph::from_edges(edges, n);
}

SocialGraph generate_ring(std::size_t n, double mean_followers, std::uint64_t seed) {
  if (n < 3) throw InvalidInput("ring needs n >= 3");
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    add_undirected(edges, static_cast<UserId>(u), static_cast<UserId>((u + 1) % n));
  }

  const std::size_t max_edges = n * (n - 1);
  const auto wanted = std::min<std::size_t>(
      max_edges, static_cast<std::size_t>(std::llround(std::max(0.0, mean_followers) * static_cast<double>(n))));

  std::vector<char> present(n * n, 0);
  for (const Edge& e : edges) present[e.follower * n + e.leader] = 1;
  std::size_t count = edges.size();

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (count < wanted) {
    const std::size_t f = pick(rng);
    const std::size_t l = pick(rng);
    if (f == l || present[f * n + l]) continue;
    present[f * n + l] = 1;
    edges.push_back({static_cast<UserId>(f), static_cast<UserId>(l)});
    ++count;
  }
  return SocialGraph::from_edges(edges, n);
}

}  // namespace psirank
