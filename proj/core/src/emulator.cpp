#include "psirank/emulator.hpp"

#include <algorithm>
#include <string>

#include "psirank/error.hpp"

namespace psirank {

namespace {

std::uint64_t key(UserId origin, UserId user) {
  return (static_cast<std::uint64_t>(origin) << 32) | user;
}

}  // namespace

double EmulatorResult::q_of(UserId origin, UserId user) const {
  auto it = std::lower_bound(q.begin(), q.end(), Occupancy{origin, user, 0.0},
                             [](const Occupancy& a, const Occupancy& b) {
                               return a.origin != b.origin ? a.origin < b.origin : a.user < b.user;
                             });
  return it != q.end() && it->origin == origin && it->user == user ? it->q : 0.0;
}

Replayer::Replayer(std::size_t n_users, double window_start)
    : start_(window_start), slot_origin_(n_users, kNoUser), slot_since_(n_users, window_start) {}

void Replayer::grow(UserId user) {
  if (user >= slot_origin_.size()) {
    slot_origin_.resize(std::size_t{user} + 1, kNoUser);
    slot_since_.resize(std::size_t{user} + 1, start_);
  }
}

void Replayer::close_slot(UserId user, double t) {
  const UserId origin = slot_origin_[user];
  if (origin == kNoUser) return;
  const double since = std::max(slot_since_[user], start_);
  if (t > since) occupied_[key(origin, user)] += t - since;
}

void Replayer::feed(const TraceEvent& event) {
  if (event.timestamp < start_) {
    throw InvalidInput("event " + std::to_string(event.post_id) + " precedes the replay window");
  }
  if (last_ && trace_order(event, *last_)) {
    throw InvalidInput("event " + std::to_string(event.post_id) +
                       " is out of (timestamp, post_id) order");
  }
  last_ = event;
  ++events_;

  const auto origin = resolve_origin(event, index_);
  if (!origin) {
    ++dropped_;
    return;
  }
  index_.insert(event);
  grow(std::max(event.user, *origin));

  close_slot(event.user, event.timestamp);
  slot_origin_[event.user] = *origin;
  slot_since_[event.user] = event.timestamp;
}

EmulatorResult Replayer::finish(double window_end) {
  if (!(window_end > start_)) throw InvalidInput("replay window is empty");
  if (last_ && last_->timestamp > window_end) {
    throw InvalidInput("replay window ends before the last event");
  }

  EmulatorResult out;
  out.n_users = slot_origin_.size();
  out.window = {start_, window_end};
  out.events = events_;
  out.dropped_unknown = dropped_;

  for (UserId u = 0; u < slot_origin_.size(); ++u) close_slot(u, window_end);

  const double length = window_end - start_;
  out.q.reserve(occupied_.size());
  for (const auto& [k, time] : occupied_) {
    if (time <= 0.0) continue;
    out.q.push_back({static_cast<UserId>(k >> 32), static_cast<UserId>(k & 0xffffffffu), time / length});
  }
  std::sort(out.q.begin(), out.q.end(), [](const Occupancy& a, const Occupancy& b) {
    return a.origin != b.origin ? a.origin < b.origin : a.user < b.user;
  });

  out.psi.assign(out.n_users, 0.0);
  if (out.n_users > 1) {
    for (const auto& o : out.q) {
      if (o.origin != o.user) out.psi[o.origin] += o.q;
    }
    for (double& v : out.psi) v /= static_cast<double>(out.n_users - 1);
  }
  return out;
}

EmulatorResult replay(std::span<const TraceEvent> events, std::size_t n_users,
                      std::optional<ReplayWindow> window) {
  if (!window) {
    if (events.empty()) throw InvalidInput("replay window is empty");
    window = ReplayWindow{events.front().timestamp, events.back().timestamp};
  }
  if (!(window->end > window->start)) throw InvalidInput("replay window is empty");
  Replayer r(n_users, window->start);
  for (const auto& e : events) r.feed(e);
  return r.finish(window->end);
}

}  // namespace psirank
