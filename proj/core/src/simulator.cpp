#include "psirank/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "psirank/error.hpp"

namespace psirank {

std::string_view to_string(Selection s) {
  switch (s) {
    case Selection::kRandom: return "random";
    case Selection::kNewest: return "newest";
    case Selection::kMostPopular: return "most_popular";
    case Selection::kLeastPopular: return "least_popular";
  }
  return "?";
}

std::string_view to_string(Eviction e) {
  switch (e) {
    case Eviction::kRandom: return "random";
    case Eviction::kFifo: return "fifo";
    case Eviction::kTtl: return "ttl";
  }
  return "?";
}

std::string_view to_string(Arrivals a) {
  switch (a) {
    case Arrivals::kPoisson: return "poisson";
    case Arrivals::kHyperexponential: return "hyperexponential";
    case Arrivals::kDeterministic: return "deterministic";
  }
  return "?";
}

Selection parse_selection(std::string_view name) {
  if (name == "random") return Selection::kRandom;
  if (name == "newest") return Selection::kNewest;
  if (name == "most_popular") return Selection::kMostPopular;
  if (name == "least_popular") return Selection::kLeastPopular;
  throw InvalidInput("unknown selection policy '" + std::string(name) + "'");
}

Eviction parse_eviction(std::string_view name) {
  if (name == "random") return Eviction::kRandom;
  if (name == "fifo" || name == "fifo_oldest") return Eviction::kFifo;
  if (name == "ttl") return Eviction::kTtl;
  throw InvalidInput("unknown eviction policy '" + std::string(name) + "'");
}

Arrivals parse_arrivals(std::string_view name) {
  if (name == "poisson") return Arrivals::kPoisson;
  if (name == "hyperexponential" || name == "hyperexp") return Arrivals::kHyperexponential;
  if (name == "deterministic") return Arrivals::kDeterministic;
  throw InvalidInput("unknown arrival process '" + std::string(name) + "'");
}

void PolicyConfig::validate() const {
  if (eviction == Eviction::kTtl && !(ttl > 0.0)) throw InvalidInput("ttl eviction needs T > 0");
  if (arrivals == Arrivals::kHyperexponential && !(cv2 > 1.0)) {
    throw InvalidInput("hyper-exponential arrivals need cv2 > 1");
  }
}

InfluenceVectors SimulationResult::label_vectors(UserId label) const {
  InfluenceVectors v;
  v.label = label;
  v.p.assign(p_hat.begin() + label * n_users, p_hat.begin() + (label + 1) * n_users);
  v.q.assign(q_hat.begin() + label * n_users, q_hat.begin() + (label + 1) * n_users);
  return v;
}

Simulator::Simulator(const SocialGraph& graph, const ActivityRates& rates, SimulationConfig config)
    : graph_(graph), rates_(rates), config_(config), n_(graph.size()), rng_(config.seed) {
  config_.policy.validate();
  if (rates_.size() != n_) throw InvalidInput("rates and graph disagree on the number of users");
  rates_.validate();
  if (n_ > kMaxSimulatedUsers) {
    throw InvalidInput("simulator supports at most " + std::to_string(kMaxSimulatedUsers) + " users");
  }
  if (config_.newsfeed_size < 1 || config_.wall_size < 1) throw InvalidInput("M and K must be >= 1");
  if (!(config_.warmup_fraction >= 0.0 && config_.warmup_fraction < 1.0)) {
    throw InvalidInput("warm-up fraction must lie in [0, 1)");
  }

  newsfeeds_.resize(n_);
  walls_.resize(n_);
  newsfeed_cells_.resize(n_ * n_);
  wall_cells_.resize(n_ * n_);
  warmup_events_ = static_cast<std::size_t>(config_.warmup_fraction * static_cast<double>(config_.events));
  if (warmup_events_ == 0) measuring_ = true;

  for (UserId u = 0; u < n_; ++u) {
    if (rates_.lambda[u] > 0.0) schedule(u, false, 0.0, true);
    if (rates_.mu[u] > 0.0) schedule(u, true, 0.0, true);
  }
}

Simulator::Cell& Simulator::cell(ListKind kind, UserId user, UserId origin) {
  return (kind == ListKind::kNewsfeed ? newsfeed_cells_ : wall_cells_)[user * n_ + origin];
}

const Simulator::Cell& Simulator::cell(ListKind kind, UserId user, UserId origin) const {
  return (kind == ListKind::kNewsfeed ? newsfeed_cells_ : wall_cells_)[user * n_ + origin];
}

Simulator::Lists& Simulator::lists(ListKind kind, UserId user) {
  return (kind == ListKind::kNewsfeed ? newsfeeds_ : walls_)[user];
}

const Simulator::Lists& Simulator::lists(ListKind kind, UserId user) const {
  return (kind == ListKind::kNewsfeed ? newsfeeds_ : walls_)[user];
}

namespace {

void integrate(auto& c, double time) {
  c.integral += static_cast<double>(c.count) * (time - c.last);
  c.last = time;
}

}  // namespace

void Simulator::advance_to(double time) {
  if (time < clock_) throw InvalidInput("events must not go back in time");
  clock_ = time;
}

void Simulator::begin_measurement() {
  // Close everything at the current clock and restart the integrals.
  auto reset = [this](Cell& c) {
    c.integral = 0.0;
    c.last = clock_;
  };
  for (auto& c : newsfeed_cells_) reset(c);
  for (auto& c : wall_cells_) reset(c);
  for (auto& l : newsfeeds_) reset(l.size);
  for (auto& l : walls_) reset(l.size);
  measure_start_ = clock_;
  measuring_ = true;
}

double Simulator::draw_interval(double rate, bool first) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  switch (config_.policy.arrivals) {
    case Arrivals::kPoisson:
      return -std::log1p(-uniform(rng_)) / rate;
    case Arrivals::kHyperexponential: {
      // Two phases with balanced means: phase k chosen with probability p_k
      // and rate 2 p_k rate, so the overall mean stays 1 / rate.
      const double cv2 = config_.policy.cv2;
      const double p1 = 0.5 * (1.0 + std::sqrt((cv2 - 1.0) / (cv2 + 1.0)));
      const double pick = uniform(rng_);
      const double phase_p = pick < p1 ? p1 : 1.0 - p1;
      return -std::log1p(-uniform(rng_)) / (2.0 * phase_p * rate);
    }
    case Arrivals::kDeterministic:
      // Random phase for the first firing so users do not tick in lockstep.
      return first ? uniform(rng_) / rate : 1.0 / rate;
  }
  return 0.0;
}

void Simulator::schedule(UserId user, bool repost, double now, bool first) {
  const double rate = repost ? rates_.mu[user] : rates_.lambda[user];
  timers_.push({now + draw_interval(rate, first), user, repost});
}

void Simulator::evict_at(ListKind kind, UserId user, std::size_t index, double time) {
  Lists& l = lists(kind, user);
  Cell& c = cell(kind, user, l.entries[index].origin);
  integrate(c, time);
  --c.count;
  ++c.departures;
  integrate(l.size, time);
  --l.size.count;
  l.entries.erase(l.entries.begin() + static_cast<std::ptrdiff_t>(index));
}

void Simulator::insert(ListKind kind, UserId user, Entry entry, double time) {
  Lists& l = lists(kind, user);
  const Eviction eviction =
      kind == ListKind::kWall && config_.policy.eviction == Eviction::kTtl ? Eviction::kFifo
                                                                          : config_.policy.eviction;
  const std::size_t capacity = kind == ListKind::kWall ? config_.wall_size : config_.newsfeed_size;

  entry.seq = next_seq_++;
  entry.arrived = time;
  std::size_t slot = 0;
  if (eviction != Eviction::kTtl && l.entries.size() >= capacity) {
    if (eviction == Eviction::kRandom) {
      std::uniform_int_distribution<std::size_t> pick(0, l.entries.size() - 1);
      slot = pick(rng_);
    } else {
      slot = l.entries.size() - 1;  // oldest
    }
    evict_at(kind, user, slot, time);
  }
  if (eviction == Eviction::kRandom) {
    l.entries.insert(l.entries.begin() + static_cast<std::ptrdiff_t>(slot), entry);
  } else {
    l.entries.push_front(entry);
  }

  Cell& c = cell(kind, user, entry.origin);
  integrate(c, time);
  ++c.count;
  ++c.arrivals;
  integrate(l.size, time);
  ++l.size.count;
}

void Simulator::expire(UserId user, double time) {
  if (config_.policy.eviction != Eviction::kTtl) return;
  Lists& l = lists(ListKind::kNewsfeed, user);
  const double ttl = config_.policy.ttl;
  while (!l.entries.empty() && l.entries.back().arrived + ttl <= time) {
    evict_at(ListKind::kNewsfeed, user, l.entries.size() - 1, l.entries.back().arrived + ttl);
  }
}

std::size_t Simulator::select(const std::deque<Entry>& feed) {
  const Selection policy = config_.policy.selection;
  if (policy == Selection::kRandom) {
    std::uniform_int_distribution<std::size_t> pick(0, feed.size() - 1);
    return pick(rng_);
  }
  // Newest, or most/least popular with the newest entry winning ties.
  std::size_t best = 0;
  for (std::size_t k = 1; k < feed.size(); ++k) {
    const Entry& a = feed[k];
    const Entry& b = feed[best];
    bool better = a.seq > b.seq;
    if (policy != Selection::kNewest) {
      const auto pa = repost_count_[static_cast<std::size_t>(a.post_id)];
      const auto pb = repost_count_[static_cast<std::size_t>(b.post_id)];
      if (pa != pb) better = policy == Selection::kMostPopular ? pa > pb : pa < pb;
    }
    if (better) best = k;
  }
  return best;
}

void Simulator::publish(UserId author, std::int64_t post_id, UserId origin, double time) {
  const Entry entry{post_id, 0, time, origin};
  insert(ListKind::kWall, author, entry, time);
  for (UserId f : graph_.followers(author)) {
    expire(f, time);
    insert(ListKind::kNewsfeed, f, entry, time);
  }
}

void Simulator::self_post(UserId user, double time) {
  advance_to(time);
  const std::int64_t id = next_post_id_++;
  if (config_.policy.selection == Selection::kMostPopular ||
      config_.policy.selection == Selection::kLeastPopular) {
    repost_count_.push_back(0);
  }
  publish(user, id, user, time);
  if (config_.record_trace) trace_.push_back({id, time, user, kOriginalPost});
  ++self_posts_;
}

bool Simulator::repost(UserId user, double time) {
  advance_to(time);
  expire(user, time);
  const auto& feed = lists(ListKind::kNewsfeed, user).entries;
  if (feed.empty()) {
    ++skipped_;
    return false;
  }
  const Entry chosen = feed[select(feed)];
  const std::int64_t id = next_post_id_++;
  if (config_.policy.selection == Selection::kMostPopular ||
      config_.policy.selection == Selection::kLeastPopular) {
    repost_count_.push_back(0);
    ++repost_count_[static_cast<std::size_t>(chosen.post_id)];
  }
  // The re-post keeps pointing at the original post and its origin.
  publish(user, chosen.post_id, chosen.origin, time);
  if (config_.record_trace) trace_.push_back({id, time, user, chosen.post_id});
  ++reposts_;
  return true;
}

bool Simulator::step() {
  if (timers_.empty()) throw InvalidInput("no user has a positive rate");
  const Timer t = timers_.top();
  timers_.pop();
  const bool executed = t.repost ? repost(t.user, t.time) : (self_post(t.user, t.time), true);
  schedule(t.user, t.repost, t.time, false);
  if (executed) ++events_;
  return executed;
}

void Simulator::run() {
  while (events_ < config_.events) {
    if (!measuring_ && events_ >= warmup_events_) begin_measurement();
    step();
  }
  if (!measuring_) begin_measurement();
}

ConservationCounts Simulator::conservation(UserId origin, UserId user, ListKind kind) const {
  const Cell& c = cell(kind, user, origin);
  ConservationCounts out;
  out.arrivals = c.arrivals;
  out.departures = c.departures;
  for (const Entry& e : lists(kind, user).entries) {
    if (e.origin == origin) ++out.current;
  }
  return out;
}

std::size_t Simulator::conservation_violations() const {
  std::size_t bad = 0;
  for (UserId u = 0; u < n_; ++u) {
    for (ListKind kind : {ListKind::kNewsfeed, ListKind::kWall}) {
      std::vector<std::int64_t> held(n_, 0);
      for (const Entry& e : lists(kind, u).entries) ++held[e.origin];
      for (UserId o = 0; o < n_; ++o) {
        const Cell& c = cell(kind, u, o);
        if (c.arrivals != c.departures + held[o]) ++bad;
      }
    }
  }
  return bad;
}

std::size_t Simulator::list_length(UserId user, ListKind kind) const {
  return lists(kind, user).entries.size();
}

SimulationResult Simulator::result() {
  for (UserId u = 0; u < n_; ++u) expire(u, clock_);
  if (!measuring_) begin_measurement();

  SimulationResult r;
  r.n_users = n_;
  r.measure_start = measure_start_;
  r.measure_end = clock_;
  r.events = events_;
  r.warmup_events = std::min(warmup_events_, events_);
  r.skipped_reposts = skipped_;
  r.self_posts = self_posts_;
  r.reposts = reposts_;
  r.p_hat.assign(n_ * n_, 0.0);
  r.q_hat.assign(n_ * n_, 0.0);
  r.newsfeed_time.assign(n_ * n_, 0.0);
  r.wall_time.assign(n_ * n_, 0.0);
  r.mean_newsfeed_size.assign(n_, 0.0);
  r.mean_wall_size.assign(n_, 0.0);

  const double horizon = clock_ - measure_start_;
  auto closed = [this](Cell c) {
    integrate(c, clock_);
    return c.integral;
  };
  for (UserId u = 0; u < n_; ++u) {
    const double feed_total = closed(newsfeeds_[u].size);
    const double wall_total = closed(walls_[u].size);
    if (horizon > 0.0) {
      r.mean_newsfeed_size[u] = feed_total / horizon;
      r.mean_wall_size[u] = wall_total / horizon;
    }
    for (UserId o = 0; o < n_; ++o) {
      const double nf = closed(newsfeed_cells_[u * n_ + o]);
      const double wl = closed(wall_cells_[u * n_ + o]);
      r.newsfeed_time[o * n_ + u] = nf;
      r.wall_time[o * n_ + u] = wl;
      if (feed_total > 0.0) r.p_hat[o * n_ + u] = nf / feed_total;
      if (wall_total > 0.0) r.q_hat[o * n_ + u] = wl / wall_total;
    }
  }
  return r;
}

SimulationResult simulate(const SocialGraph& graph, const ActivityRates& rates,
                          const SimulationConfig& config) {
  Simulator sim(graph, rates, config);
  sim.run();
  return sim.result();
}

bool check_conservation(const Simulator& sim, UserId origin, UserId user) {
  return sim.conservation(origin, user, ListKind::kNewsfeed).holds();
}

}  // namespace psirank
