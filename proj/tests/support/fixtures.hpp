#pragma once

#include <vector>

#include "psirank/graph.hpp"
#include "psirank/rates.hpp"

namespace fixtures {

// Four-user example network; ids A=0, B=1, C=2, D=3, pairs are
// (follower, leader).
inline constexpr psirank::UserId A = 0, B = 1, C = 2, D = 3;

inline std::vector<psirank::Edge> toy_edges() {
  return {{A, B}, {A, C}, {A, D}, {B, A}, {B, D}, {C, A}, {D, B}, {D, C}};
}

inline psirank::SocialGraph toy_graph() { return psirank::SocialGraph::from_edges(toy_edges(), 4); }

inline psirank::ActivityRates toy_rates() { return psirank::ActivityRates::homogeneous(4, 0.105, 2.0); }

inline std::vector<psirank::Edge> two_cycle_edges() { return {{0, 1}, {1, 0}}; }

}  // namespace fixtures
