#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "psirank/trace.hpp"
#include "psirank/types.hpp"

namespace psirank {

struct ReplayWindow {
  double start = 0.0;
  double end = 0.0;
};

/// Share of the window during which content of `origin` held `user`'s Wall.
struct Occupancy {
  UserId origin;
  UserId user;
  double q;

  friend bool operator==(const Occupancy&, const Occupancy&) = default;
};

struct EmulatorResult {
  std::size_t n_users = 0;
  ReplayWindow window;
  std::vector<Occupancy> q;  // sorted by (origin, user), zero entries omitted
  std::vector<double> psi;   // psi^emu per user, excluding the user's own Wall
  std::size_t events = 0;
  std::size_t dropped_unknown = 0;  // reposts of posts absent from the trace

  /// Dense lookup; 0 when absent.
  double q_of(UserId origin, UserId user) const;
};

/// Single-pass trace replay with one-slot FIFO Walls (K = 1): every event by
/// user j replaces j's Wall content with a post whose origin is the resolved
/// original author. Events must arrive in trace_order. Memory grows with the
/// number of users and indexed posts, not with the number of events.
class Replayer {
 public:
  Replayer(std::size_t n_users, double window_start);

  /// Throws InvalidInput if the event is out of order or precedes the window.
  void feed(const TraceEvent& event);

  /// Closes the window at `window_end` (>= last event, > start).
  EmulatorResult finish(double window_end);

 private:
  void grow(UserId user);
  void close_slot(UserId user, double t);

  double start_;
  std::optional<TraceEvent> last_;
  PostIndex index_;
  std::vector<UserId> slot_origin_;  // kNoUser while the Wall is empty
  std::vector<double> slot_since_;
  std::unordered_map<std::uint64_t, double> occupied_;  // (origin << 32 | user) -> time
  std::size_t events_ = 0;
  std::size_t dropped_ = 0;
};

/// Replays time-sorted events. The window defaults to (first timestamp, last
/// timestamp); an empty window throws InvalidInput. Users with no events have
/// all-zero rows. `n_users` may exceed the largest id seen.
EmulatorResult replay(std::span<const TraceEvent> events, std::size_t n_users,
                      std::optional<ReplayWindow> window = std::nullopt);

}  // namespace psirank
