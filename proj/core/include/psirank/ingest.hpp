#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "psirank/emulator.hpp"
#include "psirank/error.hpp"
#include "psirank/graph.hpp"
#include "psirank/rates.hpp"
#include "psirank/trace.hpp"

namespace psirank {

struct TraceDiagnostic {
  std::size_t line;  // 1-based
  std::string message;
};

/// Raised when a trace has more malformed lines than the error budget allows.
class TraceParseError : public InvalidInput {
 public:
  TraceParseError(const std::string& what, std::vector<TraceDiagnostic> diagnostics)
      : InvalidInput(what), diagnostics_(std::move(diagnostics)) {}
  const std::vector<TraceDiagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<TraceDiagnostic> diagnostics_;
};

/// A parsed trace with dense ids. External ids keep their relative order
/// (numerically when every id is an integer, lexically otherwise), so
/// user_names[k] is the k-th smallest external user id.
struct ParsedTrace {
  std::vector<TraceEvent> events;  // sorted by trace_order
  std::vector<std::string> user_names;
  std::vector<std::string> post_names;
  std::vector<TraceDiagnostic> diagnostics;

  std::size_t n_users() const noexcept { return user_names.size(); }
};

/// Reads `post_id,timestamp,user_id,repost_id` lines, comma or tab separated,
/// with an optional header and '#' comments. Timestamps are seconds (integer
/// or real) or ISO-8601 date-times. Malformed lines are skipped and reported;
/// more than `error_budget` of them throws TraceParseError.
ParsedTrace parse_trace(std::istream& in, std::size_t error_budget = 0);
ParsedTrace parse_trace(const std::filesystem::path& path, std::size_t error_budget = 0);

/// Seconds since the Unix epoch for an ISO-8601 date-time such as
/// 2012-05-01T12:30:00Z, 2012-05-01 12:30:00.25 or 2012-05-01T12:30:00+02:00.
/// Throws InvalidInput on anything else.
double parse_iso8601(std::string_view text);

/// Seconds as a plain number or an ISO-8601 date-time.
double parse_timestamp(std::string_view text);

struct RateEstimate {
  ActivityRates rates;
  std::vector<std::size_t> posts;    // originals per user inside the window
  std::vector<std::size_t> reposts;  // re-posts per user inside the window
  std::vector<UserId> inactive;      // users with lambda + mu = 0
  double window_length = 0.0;
};

/// lambda_u = originals by u / window length, mu_u = re-posts by u / window
/// length, counting events with start <= t <= end. Throws InvalidInput for a
/// window of non-positive length.
RateEstimate estimate_rates(std::span<const TraceEvent> events, ReplayWindow window,
                            std::size_t n_users);

struct StarGraph {
  SocialGraph graph;
  std::size_t repost_pairs = 0;  // distinct (re-poster, origin) pairs, self pairs included
  std::size_t self_pairs = 0;
  std::size_t unresolved = 0;    // re-posts whose origin could not be traced
};

/// Follower graph in which i follows j iff i re-posted content of origin j at
/// least once. Origins are resolved transitively through repost chains.
/// Events must be in trace_order.
StarGraph infer_star_graph(std::span<const TraceEvent> events, std::size_t n_users);

}  // namespace psirank
