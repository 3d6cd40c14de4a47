#include "psirank/graph.hpp"

#include <algorithm>
#include <string>

namespace psirank {

namespace {

std::string describe(Edge e) {
  return "(" + std::to_string(e.follower) + ", " + std::to_string(e.leader) + ")";
}

}  // namespace

SocialGraph::Adjacency SocialGraph::compress(std::size_t n_users, std::vector<Edge>& pairs) {
  // pairs are (row, column); sort + unique gives sorted duplicate-free rows.
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  Adjacency adj;
  adj.offsets.assign(n_users + 1, 0);
  adj.targets.reserve(pairs.size());
  for (const Edge& e : pairs) {
    ++adj.offsets[e.follower + 1];
    adj.targets.push_back(e.leader);
  }
  for (std::size_t u = 0; u < n_users; ++u) adj.offsets[u + 1] += adj.offsets[u];
  return adj;
}

SocialGraph SocialGraph::from_edges(std::span<const Edge> edges, std::size_t n_users) {
  std::vector<Edge> by_follower;
  std::vector<Edge> by_leader;
  by_follower.reserve(edges.size());
  by_leader.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.follower >= n_users || e.leader >= n_users) {
      throw GraphError("edge " + describe(e) + " references a user outside [0, " +
                           std::to_string(n_users) + ")",
                       e);
    }
    if (e.follower == e.leader) throw GraphError("self-loop " + describe(e), e);
    by_follower.push_back(e);
    by_leader.push_back({e.leader, e.follower});
  }

  SocialGraph g;
  g.n_users_ = n_users;
  g.leaders_ = compress(n_users, by_follower);
  g.followers_ = compress(n_users, by_leader);
  return g;
}

bool SocialGraph::follows(UserId follower, UserId leader) const {
  if (follower >= n_users_ || leader >= n_users_) return false;
  auto row = leaders(follower);
  return std::binary_search(row.begin(), row.end(), leader);
}

std::vector<Edge> SocialGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (UserId j = 0; j < n_users_; ++j) {
    for (UserId k : leaders(j)) out.push_back({j, k});
  }
  return out;
}

bool SocialGraph::is_symmetric() const {
  for (UserId j = 0; j < n_users_; ++j) {
    if (!std::ranges::equal(leaders(j), followers(j))) return false;
  }
  return true;
}

bool SocialGraph::is_consistent() const {
  auto check_rows = [this](const Adjacency& adj) {
    if (adj.offsets.size() != n_users_ + 1 || adj.offsets.back() != adj.targets.size()) {
      return false;
    }
    for (UserId u = 0; u < n_users_; ++u) {
      auto row = adj.row(u);
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] >= n_users_ || row[k] == u) return false;
        if (k > 0 && row[k - 1] >= row[k]) return false;
      }
    }
    return true;
  };
  if (!check_rows(leaders_) || !check_rows(followers_)) return false;
  if (leaders_.targets.size() != followers_.targets.size()) return false;

  for (UserId j = 0; j < n_users_; ++j) {
    for (UserId k : leaders(j)) {
      auto f = followers(k);
      if (!std::binary_search(f.begin(), f.end(), j)) return false;
    }
  }
  return true;
}

SocialGraph build_graph(std::span<const Edge> edges, std::size_t n_users) {
  return SocialGraph::from_edges(edges, n_users);
}

}  // namespace psirank
