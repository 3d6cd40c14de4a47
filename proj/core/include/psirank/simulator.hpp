#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psirank/graph.hpp"
#include "psirank/rates.hpp"
#include "psirank/solver.hpp"
#include "psirank/trace.hpp"
#include "psirank/types.hpp"

namespace psirank {

enum class Selection { kRandom, kNewest, kMostPopular, kLeastPopular };
enum class Eviction { kRandom, kFifo, kTtl };
enum class Arrivals { kPoisson, kHyperexponential, kDeterministic };

std::string_view to_string(Selection s);
std::string_view to_string(Eviction e);
std::string_view to_string(Arrivals a);
Selection parse_selection(std::string_view name);
Eviction parse_eviction(std::string_view name);
Arrivals parse_arrivals(std::string_view name);

struct PolicyConfig {
  Selection selection = Selection::kRandom;
  /// Applies to Newsfeeds and Walls, except that TTL only governs Newsfeeds
  /// (Walls then evict FIFO).
  Eviction eviction = Eviction::kRandom;
  double ttl = 0.0;  // post lifetime on a Newsfeed under Eviction::kTtl
  Arrivals arrivals = Arrivals::kPoisson;
  /// Squared coefficient of variation of the two-phase balanced-means
  /// hyper-exponential inter-arrival law.
  double cv2 = 4.0;

  void validate() const;
};

struct SimulationConfig {
  PolicyConfig policy;
  std::size_t newsfeed_size = 20;  // M
  std::size_t wall_size = 10;      // K
  std::size_t events = 300000;     // executed posts + re-posts
  std::uint64_t seed = 1;
  /// Leading share of events excluded from the occupancy averages.
  double warmup_fraction = 0.2;
  bool record_trace = false;
};

inline constexpr std::size_t kMaxSimulatedUsers = 2048;

enum class ListKind { kNewsfeed, kWall };

/// X(0) + arrivals = departures + X(T) for one (origin, list) pair. `current`
/// comes from scanning the list itself, not from the running counters.
struct ConservationCounts {
  std::int64_t initial = 0;
  std::int64_t arrivals = 0;
  std::int64_t departures = 0;
  std::int64_t current = 0;

  bool holds() const noexcept { return initial + arrivals == departures + current; }
};

/// Empirical steady state of one run. Matrices are origin-major:
/// value(origin, user) = data[origin * n_users + user].
struct SimulationResult {
  std::size_t n_users = 0;
  std::vector<double> p_hat;          // Newsfeed share, time averaged
  std::vector<double> q_hat;          // Wall share, time averaged
  std::vector<double> wall_time;      // integral of origin count on the Wall
  std::vector<double> newsfeed_time;  // same for the Newsfeed
  std::vector<double> mean_newsfeed_size;
  std::vector<double> mean_wall_size;
  double measure_start = 0.0;
  double measure_end = 0.0;
  std::size_t events = 0;
  std::size_t warmup_events = 0;
  std::size_t skipped_reposts = 0;
  std::size_t self_posts = 0;
  std::size_t reposts = 0;

  double p(UserId origin, UserId user) const { return p_hat[origin * n_users + user]; }
  double q(UserId origin, UserId user) const { return q_hat[origin * n_users + user]; }

  /// Empirical p and q for one label in the solver's layout.
  InfluenceVectors label_vectors(UserId label) const;
};

/// Event-driven simulation of the platform: every user owns a Wall of K posts
/// and a Newsfeed of M posts (unbounded under TTL eviction), self-posts and
/// re-posts fire from per-user timers, and anything written on a Wall is
/// copied to every follower's Newsfeed at once. One seeded generator drives
/// every random choice in event order, so a run is reproducible bit for bit.
class Simulator {
 public:
  Simulator(const SocialGraph& graph, const ActivityRates& rates, SimulationConfig config);

  /// Executes events until config.events have run. Re-posts attempted on an
  /// empty Newsfeed are skipped and do not count.
  void run();

  /// Fires the earliest timer. Returns false for a skipped re-post.
  bool step();

  /// Applies one event directly, bypassing the timers; `time` must not go
  /// back in time.
  void self_post(UserId user, double time);
  bool repost(UserId user, double time);

  double clock() const noexcept { return clock_; }
  std::size_t events() const noexcept { return events_; }

  ConservationCounts conservation(UserId origin, UserId user,
                                  ListKind kind = ListKind::kNewsfeed) const;
  /// Number of (origin, user, list) triples whose identity fails.
  std::size_t conservation_violations() const;

  std::size_t list_length(UserId user, ListKind kind) const;

  /// Integrals are closed at the current clock.
  SimulationResult result();

  const std::vector<TraceEvent>& trace() const noexcept { return trace_; }

 private:
  struct Entry {
    std::int64_t post_id;
    std::uint64_t seq;  // insertion order, newest = largest
    double arrived;
    UserId origin;
  };

  struct Cell {
    std::int64_t count = 0;
    std::int64_t arrivals = 0;
    std::int64_t departures = 0;
    double last = 0.0;
    double integral = 0.0;
  };

  struct Lists {
    std::deque<Entry> entries;  // front = most recent insertion under FIFO/TTL
    Cell size;                  // count = list length
  };

  struct Timer {
    double time;
    UserId user;
    bool repost;

    bool operator>(const Timer& o) const {
      if (time != o.time) return time > o.time;
      if (user != o.user) return user > o.user;
      return repost > o.repost;
    }
  };

  Cell& cell(ListKind kind, UserId user, UserId origin);
  const Cell& cell(ListKind kind, UserId user, UserId origin) const;
  Lists& lists(ListKind kind, UserId user);
  const Lists& lists(ListKind kind, UserId user) const;

  void advance_to(double time);
  void begin_measurement();
  double draw_interval(double rate, bool first);
  void schedule(UserId user, bool repost, double now, bool first);
  void insert(ListKind kind, UserId user, Entry entry, double time);
  void evict_at(ListKind kind, UserId user, std::size_t index, double time);
  void expire(UserId user, double time);
  std::size_t select(const std::deque<Entry>& feed);
  void publish(UserId author, std::int64_t post_id, UserId origin, double time);

  SocialGraph graph_;
  ActivityRates rates_;
  SimulationConfig config_;
  std::size_t n_;

  std::mt19937_64 rng_;
  std::priority_queue<Timer, std::vector<Timer>, std::greater<>> timers_;

  std::vector<Lists> newsfeeds_;
  std::vector<Lists> walls_;
  std::vector<Cell> newsfeed_cells_;  // [user * n + origin]
  std::vector<Cell> wall_cells_;
  std::vector<std::uint32_t> repost_count_;  // by post id, popularity policies only

  double clock_ = 0.0;
  double measure_start_ = 0.0;
  bool measuring_ = false;
  std::size_t warmup_events_ = 0;
  std::size_t events_ = 0;
  std::size_t skipped_ = 0;
  std::size_t self_posts_ = 0;
  std::size_t reposts_ = 0;
  std::int64_t next_post_id_ = 0;
  std::uint64_t next_seq_ = 0;
  std::vector<TraceEvent> trace_;
};

/// Runs a fresh simulation to completion.
SimulationResult simulate(const SocialGraph& graph, const ActivityRates& rates,
                          const SimulationConfig& config);

/// True when the conservation identity holds for (origin, user)'s Newsfeed.
bool check_conservation(const Simulator& sim, UserId origin, UserId user);

}  // namespace psirank
