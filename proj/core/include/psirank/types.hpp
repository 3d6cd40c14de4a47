#pragma once

#include <cstdint>
#include <limits>

namespace psirank {

/// Dense user index in [0, n_users).
using UserId = std::uint32_t;

inline constexpr UserId kNoUser = std::numeric_limits<UserId>::max();

/// A directed follow relation: `follower` reads what `leader` writes.
struct Edge {
  UserId follower;
  UserId leader;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

}  // namespace psirank
