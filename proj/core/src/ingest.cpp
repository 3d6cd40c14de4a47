#include "psirank/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace psirank {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

int digits(std::string_view s, std::size_t pos, std::size_t count) {
  if (pos + count > s.size()) throw InvalidInput("truncated date-time '" + std::string(s) + "'");
  int v = 0;
  for (std::size_t k = pos; k < pos + count; ++k) {
    if (s[k] < '0' || s[k] > '9') throw InvalidInput("bad date-time '" + std::string(s) + "'");
    v = v * 10 + (s[k] - '0');
  }
  return v;
}

void expect(std::string_view s, std::size_t pos, std::string_view allowed) {
  if (pos >= s.size() || allowed.find(s[pos]) == std::string_view::npos) {
    throw InvalidInput("bad date-time '" + std::string(s) + "'");
  }
}

// Orders external ids numerically when they are all integers.
std::vector<std::string> ordered_names(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const bool numeric = std::all_of(names.begin(), names.end(), [](const std::string& s) {
    return parse_number<std::int64_t>(s).has_value();
  });
  if (numeric) {
    std::sort(names.begin(), names.end(), [](const std::string& a, const std::string& b) {
      return *parse_number<std::int64_t>(a) < *parse_number<std::int64_t>(b);
    });
  }
  return names;
}

struct RawEvent {
  std::string post;
  double timestamp;
  std::string user;
  std::string repost;  // empty for originals
  std::size_t line;
};

}  // namespace

double parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  const std::string_view s = trim(text);
  const int y = digits(s, 0, 4);
  expect(s, 4, "-");
  const int mo = digits(s, 5, 2);
  expect(s, 7, "-");
  const int d = digits(s, 8, 2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw InvalidInput("invalid calendar date '" + std::string(s) + "'");
  double seconds = static_cast<double>(sys_days{ymd}.time_since_epoch().count()) * 86400.0;
  if (s.size() == 10) return seconds;

  expect(s, 10, "T ");
  const int h = digits(s, 11, 2);
  expect(s, 13, ":");
  const int mi = digits(s, 14, 2);
  expect(s, 16, ":");
  const int sec = digits(s, 17, 2);
  if (h > 23 || mi > 59 || sec > 60) throw InvalidInput("invalid time of day '" + std::string(s) + "'");
  seconds += h * 3600.0 + mi * 60.0 + sec;

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    std::size_t end = pos + 1;
    while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
    if (end == pos + 1) throw InvalidInput("bad fractional seconds in '" + std::string(s) + "'");
    seconds += *parse_number<double>(s.substr(pos, end - pos));
    pos = end;
  }
  if (pos == s.size()) return seconds;
  if (s[pos] == 'Z' && pos + 1 == s.size()) return seconds;
  expect(s, pos, "+-");
  const int sign = s[pos] == '+' ? 1 : -1;
  const int oh = digits(s, pos + 1, 2);
  expect(s, pos + 3, ":");
  const int om = digits(s, pos + 4, 2);
  if (pos + 6 != s.size()) throw InvalidInput("trailing characters in '" + std::string(s) + "'");
  return seconds - sign * (oh * 3600.0 + om * 60.0);
}

double parse_timestamp(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto v = parse_number<double>(s)) {
    if (!std::isfinite(*v)) throw InvalidInput("non-finite timestamp '" + std::string(s) + "'");
    return *v;
  }
  return parse_iso8601(s);
}

ParsedTrace parse_trace(std::istream& in, std::size_t error_budget) {
  ParsedTrace out;
  std::vector<RawEvent> raw;
  std::unordered_set<std::string> seen_posts;
  std::optional<char> sep;
  bool first_data_line = true;

  auto report = [&](std::size_t line, std::string message) {
    out.diagnostics.push_back({line, std::move(message)});
    if (out.diagnostics.size() > error_budget) {
      std::string summary = std::to_string(out.diagnostics.size()) +
                            " malformed trace lines exceed the error budget of " +
                            std::to_string(error_budget) + "; first at line " +
                            std::to_string(out.diagnostics.front().line) + ": " +
                            out.diagnostics.front().message;
      throw TraceParseError(summary, out.diagnostics);
    }
  };

  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const std::string_view line = trim(buffer);
    if (line.empty() || line.front() == '#') continue;
    if (!sep) sep = line.find('\t') != std::string_view::npos ? '\t' : ',';

    const auto fields = split(line, *sep);
    const bool header = first_data_line && fields.size() == 4 &&
                        !parse_number<std::int64_t>(fields[0]).has_value() &&
                        !parse_number<std::int64_t>(fields[3]).has_value();
    first_data_line = false;
    if (header) continue;

    if (fields.size() != 4) {
      report(line_no, "expected 4 fields, found " + std::to_string(fields.size()));
      continue;
    }
    if (fields[0].empty() || fields[2].empty() || fields[3].empty()) {
      report(line_no, "empty field");
      continue;
    }
    double ts = 0.0;
    try {
      ts = parse_timestamp(fields[1]);
    } catch (const InvalidInput& e) {
      report(line_no, e.what());
      continue;
    }
    const bool original = fields[3] == "-1";
    if (!original && fields[3] == fields[0]) {
      report(line_no, "post " + std::string(fields[0]) + " re-posts itself");
      continue;
    }
    if (!seen_posts.emplace(fields[0]).second) {
      report(line_no, "duplicate post id " + std::string(fields[0]));
      continue;
    }
    raw.push_back({std::string(fields[0]), ts, std::string(fields[2]),
                   original ? std::string() : std::string(fields[3]), line_no});
  }

  std::vector<std::string> users;
  std::vector<std::string> posts;
  users.reserve(raw.size());
  posts.reserve(raw.size());
  for (const RawEvent& e : raw) {
    users.push_back(e.user);
    posts.push_back(e.post);
    if (!e.repost.empty()) posts.push_back(e.repost);
  }
  out.user_names = ordered_names(std::move(users));
  out.post_names = ordered_names(std::move(posts));

  std::unordered_map<std::string_view, UserId> user_ids;
  std::unordered_map<std::string_view, std::int64_t> post_ids;
  for (std::size_t k = 0; k < out.user_names.size(); ++k) {
    user_ids.emplace(out.user_names[k], static_cast<UserId>(k));
  }
  for (std::size_t k = 0; k < out.post_names.size(); ++k) {
    post_ids.emplace(out.post_names[k], static_cast<std::int64_t>(k));
  }

  out.events.reserve(raw.size());
  for (const RawEvent& e : raw) {
    out.events.push_back({post_ids.at(e.post), e.timestamp, user_ids.at(e.user),
                          e.repost.empty() ? kOriginalPost : post_ids.at(e.repost)});
  }
  std::sort(out.events.begin(), out.events.end(), trace_order);
  return out;
}

ParsedTrace parse_trace(const std::filesystem::path& path, std::size_t error_budget) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open trace file " + path.string());
  return parse_trace(in, error_budget);
}

RateEstimate estimate_rates(std::span<const TraceEvent> events, ReplayWindow window,
                            std::size_t n_users) {
  const double length = window.end - window.start;
  if (!(length > 0.0)) throw InvalidInput("rate estimation needs a window of positive length");

  RateEstimate out;
  out.window_length = length;
  out.posts.assign(n_users, 0);
  out.reposts.assign(n_users, 0);
  for (const TraceEvent& e : events) {
    if (e.timestamp < window.start || e.timestamp > window.end) continue;
    if (e.user >= n_users) {
      throw InvalidInput("event by user " + std::to_string(e.user) + " outside 0.." +
                         std::to_string(n_users));
    }
    ++(e.is_repost() ? out.reposts : out.posts)[e.user];
  }
  out.rates.lambda.resize(n_users);
  out.rates.mu.resize(n_users);
  for (std::size_t u = 0; u < n_users; ++u) {
    out.rates.lambda[u] = static_cast<double>(out.posts[u]) / length;
    out.rates.mu[u] = static_cast<double>(out.reposts[u]) / length;
    if (out.posts[u] + out.reposts[u] == 0) out.inactive.push_back(static_cast<UserId>(u));
  }
  return out;
}

StarGraph infer_star_graph(std::span<const TraceEvent> events, std::size_t n_users) {
  StarGraph out;
  PostIndex index;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> pairs;
  for (const TraceEvent& e : events) {
    if (e.is_repost()) {
      if (auto origin = resolve_origin(e, index)) {
        const std::uint64_t key = (static_cast<std::uint64_t>(e.user) << 32) | *origin;
        if (pairs.insert(key).second) {
          if (*origin == e.user) {
            ++out.self_pairs;
          } else {
            edges.push_back({e.user, *origin});
          }
        }
      } else {
        ++out.unresolved;
      }
    }
    index.insert(e);
  }
  out.repost_pairs = pairs.size();
  out.graph = SocialGraph::from_edges(edges, n_users);
  return out;
}

}  // namespace psirank
