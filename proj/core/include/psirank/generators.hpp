#pragma once

#include <cstddef>
#include <cstdint>

#include "psirank/graph.hpp"

namespace psirank {

// Every undirected generator below emits both orientations of each edge, so
// the resulting SocialGraph is symmetric. All of them are deterministic for a
// fixed seed.

/// Perfect binary tree with 2^(depth+1) - 1 nodes in breadth-first order: node
/// k has children 2k+1 and 2k+2, node 0 is the root. Requires depth >= 1.
SocialGraph generate_binary_tree(int depth);

/// Configuration model on a power-law degree sequence P(deg >= k) = k^-(exponent-1),
/// k >= 1, capped at n-1. An odd stub total is repaired by adding one stub to
/// the first node below the cap. Stubs are matched after a seeded shuffle;
/// self-loops and multi-edges produced by the matching are discarded.
/// Requires n >= 2 and exponent > 2.
SocialGraph generate_scale_free(std::size_t n, double exponent, std::uint64_t seed);

/// Undirected G(n, p) with p = mean_degree / (n - 1), sampled by geometric
/// skipping. Requires n >= 2 and 0 <= mean_degree < n - 1; zero gives the
/// empty graph.
SocialGraph generate_erdos_renyi(std::size_t n, double mean_degree, std::uint64_t seed);

/// Every user follows every other user.
SocialGraph generate_complete(std::size_t n);

/// Bidirectional ring 0 - 1 - ... - (n-1) - 0 plus uniformly drawn extra
/// follow edges until the graph holds round(n * mean_followers) directed
/// edges (or is complete). Requires n >= 3.
SocialGraph generate_ring(std::size_t n, double mean_followers, std::uint64_t seed);

}  // namespace psirank
