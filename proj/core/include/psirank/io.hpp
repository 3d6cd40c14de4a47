#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "psirank/emulator.hpp"
#include "psirank/graph.hpp"
#include "psirank/metrics.hpp"
#include "psirank/rates.hpp"
#include "psirank/solver.hpp"
#include "psirank/trace.hpp"

namespace psirank {

/// Output file that only appears under its final name after commit(). Until
/// then it is written to `<path>.partial`; a writer destroyed without commit
/// leaves the `.partial` file behind as a visible marker of the failure.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path partial_;
  std::ofstream out_;
  bool committed_ = false;
};

struct LoadedGraph {
  SocialGraph graph;
  /// External name of every dense id. For purely numeric files the ids are
  /// used as given and names[k] == to_string(k).
  std::vector<std::string> names;
};

/// Edge list of `follower<TAB>leader` lines (commas and spaces also accepted)
/// with '#' comments. Integer ids are used directly; otherwise tokens are
/// mapped to dense ids in sorted order. `n_users` raises the user count above
/// the largest id seen.
LoadedGraph read_edge_list(std::istream& in, std::size_t n_users = 0);
LoadedGraph read_edge_list(const std::filesystem::path& path, std::size_t n_users = 0);
void write_edge_list(std::ostream& out, const SocialGraph& graph);

/// `id<TAB>external_id` lines.
void write_id_map(std::ostream& out, std::span<const std::string> names);
std::vector<std::string> read_id_map(const std::filesystem::path& path);

/// `user_id<TAB>lambda<TAB>mu` lines; every user 0..n_users-1 must appear once.
ActivityRates read_rates(std::istream& in, std::size_t n_users);
ActivityRates read_rates(const std::filesystem::path& path, std::size_t n_users);
void write_rates(std::ostream& out, const ActivityRates& rates);

/// `label,user,p,q` rows; rows with p = q = 0 are omitted.
void write_vectors_header(std::ostream& out);
void write_vectors(std::ostream& out, const InfluenceVectors& v);

/// `user_id,psi,psi_tilde,rank`.
void write_scores(std::ostream& out, const ScoreTable& scores);
ScoreTable read_scores(const std::filesystem::path& path);

void write_common_proportion(std::ostream& out, std::span<const std::size_t> depths,
                             std::span<const double> proportions);
void write_rank_scatter(std::ostream& out, std::span<const RankPair> pairs);

/// `origin,user,q_emu`.
void write_occupancy(std::ostream& out, const EmulatorResult& result);

/// `post_id,timestamp,user_id,repost_id` with shortest round-trip timestamps.
void write_trace(std::ostream& out, std::span<const TraceEvent> events);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

}  // namespace psirank
