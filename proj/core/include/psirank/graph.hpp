#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "psirank/error.hpp"
#include "psirank/types.hpp"

namespace psirank {

/// Raised by build_graph for a self-loop or an out-of-range id.
class GraphError : public InvalidInput {
 public:
  GraphError(const std::string& what, Edge edge) : InvalidInput(what), edge_(edge) {}
  Edge edge() const noexcept { return edge_; }

 private:
  Edge edge_;
};

/// Directed follower graph stored twice in compressed sparse row form: once
/// indexed by follower (its leaders) and once indexed by leader (its
/// followers). Both lists are sorted and duplicate free. Immutable after
/// construction.
class SocialGraph {
 public:
  SocialGraph() = default;

  /// Builds the graph from (follower, leader) pairs. Duplicates are dropped.
  /// Throws GraphError on self-loops or ids >= n_users.
  static SocialGraph from_edges(std::span<const Edge> edges, std::size_t n_users);

  std::size_t size() const noexcept { return n_users_; }
  std::size_t edge_count() const noexcept { return leaders_.targets.size(); }

  /// L^(user): users that `user` follows.
  std::span<const UserId> leaders(UserId user) const { return leaders_.row(user); }
  /// F^(user): users that follow `user`.
  std::span<const UserId> followers(UserId user) const { return followers_.row(user); }

  bool follows(UserId follower, UserId leader) const;

  /// All edges ordered by (follower, leader).
  std::vector<Edge> edges() const;

  /// True when every edge has its reverse (undirected graph).
  bool is_symmetric() const;

  /// Full scan of the structural invariants: sorted unique rows, ids in range,
  /// no self-loops and leader/follower transpose consistency.
  bool is_consistent() const;

 private:
  struct Adjacency {
    std::vector<std::size_t> offsets;  // n_users + 1 entries
    std::vector<UserId> targets;

    std::span<const UserId> row(UserId user) const {
      return {targets.data() + offsets[user], offsets[user + 1] - offsets[user]};
    }
  };

  static Adjacency compress(std::size_t n_users, std::vector<Edge>& pairs);

  std::size_t n_users_ = 0;
  Adjacency leaders_;
  Adjacency followers_;
};

/// Same as SocialGraph::from_edges.
SocialGraph build_graph(std::span<const Edge> edges, std::size_t n_users);

}  // namespace psirank
