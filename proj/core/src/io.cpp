#include "psirank/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <optional>
#include <ostream>

#include "psirank/error.hpp"

namespace psirank {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokens(std::string_view line, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const std::size_t end = line.find_first_of(seps, pos);
    const auto tok = trim(line.substr(pos, end == std::string_view::npos ? end : end - pos));
    if (!tok.empty()) out.push_back(tok);
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

template <typename T>
std::optional<T> number(std::string_view s) {
  T value{};
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end || s.empty()) return std::nullopt;
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  return in;
}

[[noreturn]] void bad_line(std::size_t line, const std::string& what) {
  throw InvalidInput("line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

AtomicFile::AtomicFile(std::filesystem::path path)
    : path_(std::move(path)), partial_(path_.string() + ".partial"), out_(partial_) {
  if (!out_) throw Error("cannot write " + partial_.string());
}

void AtomicFile::commit() {
  if (committed_) return;
  out_.flush();
  if (!out_) throw Error("write failed for " + partial_.string());
  out_.close();
  std::filesystem::rename(partial_, path_);
  committed_ = true;
}

LoadedGraph read_edge_list(std::istream& in, std::size_t n_users) {
  std::vector<std::pair<std::string, std::string>> raw;
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const auto line = trim(buffer);
    if (line.empty() || line.front() == '#') continue;
    const auto t = tokens(line, "\t, ");
    if (t.size() != 2) bad_line(line_no, "expected 'follower leader', found " + std::to_string(t.size()) + " fields");
    raw.emplace_back(std::string(t[0]), std::string(t[1]));
  }

  const bool numeric = std::all_of(raw.begin(), raw.end(), [](const auto& e) {
    return number<UserId>(e.first).has_value() && number<UserId>(e.second).has_value();
  });

  LoadedGraph out;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (numeric) {
    std::size_t n = n_users;
    for (const auto& [f, l] : raw) {
      const UserId a = *number<UserId>(f);
      const UserId b = *number<UserId>(l);
      edges.push_back({a, b});
      n = std::max<std::size_t>(n, std::max(a, b) + std::size_t{1});
    }
    out.names.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.names.push_back(std::to_string(k));
  } else {
    std::map<std::string, UserId> ids;
    for (const auto& [f, l] : raw) {
      ids.emplace(f, 0);
      ids.emplace(l, 0);
    }
    UserId next = 0;
    for (auto& [name, id] : ids) {
      id = next++;
      out.names.push_back(name);
    }
    for (const auto& [f, l] : raw) edges.push_back({ids.at(f), ids.at(l)});
    for (std::size_t k = out.names.size(); k < n_users; ++k) out.names.push_back("#" + std::to_string(k));
  }
  out.graph = SocialGraph::from_edges(edges, out.names.size());
  return out;
}

LoadedGraph read_edge_list(const std::filesystem::path& path, std::size_t n_users) {
  auto in = open(path);
  return read_edge_list(in, n_users);
}

void write_edge_list(std::ostream& out, const SocialGraph& graph) {
  out << "# follower\tleader\n";
  for (const Edge& e : graph.edges()) out << e.follower << '\t' << e.leader << '\n';
}

void write_id_map(std::ostream& out, std::span<const std::string> names) {
  for (std::size_t k = 0; k < names.size(); ++k) out << k << '\t' << names[k] << '\n';
}

std::vector<std::string> read_id_map(const std::filesystem::path& path) {
  auto in = open(path);
  std::vector<std::string> names;
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const auto line = trim(buffer);
    if (line.empty() || line.front() == '#') continue;
    const auto t = tokens(line, "\t");
    const auto id = t.size() == 2 ? number<std::size_t>(t[0]) : std::nullopt;
    if (!id) bad_line(line_no, "expected 'id<TAB>external_id'");
    if (*id >= names.size()) names.resize(*id + 1);
    names[*id] = std::string(t[1]);
  }
  return names;
}

ActivityRates read_rates(std::istream& in, std::size_t n_users) {
  ActivityRates rates;
  rates.lambda.assign(n_users, 0.0);
  rates.mu.assign(n_users, 0.0);
  std::vector<char> seen(n_users, 0);
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const auto line = trim(buffer);
    if (line.empty() || line.front() == '#') continue;
    const auto t = tokens(line, "\t, ");
    if (t.size() != 3) bad_line(line_no, "expected 'user lambda mu'");
    const auto user = number<std::size_t>(t[0]);
    const auto lambda = number<double>(t[1]);
    const auto mu = number<double>(t[2]);
    if (!user && line_no == 1) continue;  // header
    if (!user || !lambda || !mu) bad_line(line_no, "unparsable rate entry");
    if (*user >= n_users) bad_line(line_no, "user " + std::to_string(*user) + " is not in the graph");
    if (seen[*user]) bad_line(line_no, "user " + std::to_string(*user) + " listed twice");
    seen[*user] = 1;
    rates.lambda[*user] = *lambda;
    rates.mu[*user] = *mu;
  }
  const auto missing = std::find(seen.begin(), seen.end(), 0);
  if (missing != seen.end()) {
    throw InvalidInput("rates file has no entry for user " + std::to_string(missing - seen.begin()));
  }
  rates.validate();
  return rates;
}

ActivityRates read_rates(const std::filesystem::path& path, std::size_t n_users) {
  auto in = open(path);
  return read_rates(in, n_users);
}

void write_rates(std::ostream& out, const ActivityRates& rates) {
  out << "# user_id\tlambda\tmu\n";
  for (std::size_t u = 0; u < rates.size(); ++u) {
    out << u << '\t' << format_double(rates.lambda[u]) << '\t' << format_double(rates.mu[u]) << '\n';
  }
}

void write_vectors_header(std::ostream& out) { out << "label,user,p,q\n"; }

void write_vectors(std::ostream& out, const InfluenceVectors& v) {
  for (std::size_t j = 0; j < v.p.size(); ++j) {
    if (v.p[j] == 0.0 && v.q[j] == 0.0) continue;
    out << v.label << ',' << j << ',' << format_double(v.p[j]) << ',' << format_double(v.q[j]) << '\n';
  }
}

void write_scores(std::ostream& out, const ScoreTable& scores) {
  out << "user_id,psi,psi_tilde,rank\n";
  for (std::size_t k = 0; k < scores.users.size(); ++k) {
    out << scores.users[k] << ',' << format_double(scores.psi[k]) << ','
        << format_double(scores.psi_tilde[k]) << ',' << scores.rank[k] << '\n';
  }
}

ScoreTable read_scores(const std::filesystem::path& path) {
  auto in = open(path);
  ScoreTable table;
  std::string buffer;
  std::size_t line_no = 0;
  while (std::getline(in, buffer)) {
    ++line_no;
    const auto line = trim(buffer);
    if (line.empty() || line.front() == '#') continue;
    const auto t = tokens(line, ",");
    if (t.size() != 4) bad_line(line_no, "expected 'user_id,psi,psi_tilde,rank'");
    const auto user = number<UserId>(t[0]);
    if (!user && table.users.empty() && line_no == 1) continue;  // header
    const auto psi = number<double>(t[1]);
    const auto psi_tilde = number<double>(t[2]);
    const auto r = number<std::size_t>(t[3]);
    if (!user || !psi || !psi_tilde || !r) bad_line(line_no, "unparsable score row");
    table.users.push_back(*user);
    table.psi.push_back(*psi);
    table.psi_tilde.push_back(*psi_tilde);
    table.rank.push_back(*r);
  }
  return table;
}

void write_common_proportion(std::ostream& out, std::span<const std::size_t> depths,
                             std::span<const double> proportions) {
  out << "X,common_proportion\n";
  for (std::size_t k = 0; k < depths.size(); ++k) {
    out << depths[k] << ',' << format_double(proportions[k]) << '\n';
  }
}

void write_rank_scatter(std::ostream& out, std::span<const RankPair> pairs) {
  out << "user,rank_a,rank_b\n";
  for (const RankPair& p : pairs) out << p.user << ',' << p.rank_a << ',' << p.rank_b << '\n';
}

void write_occupancy(std::ostream& out, const EmulatorResult& result) {
  out << "origin,user,q_emu\n";
  for (const Occupancy& o : result.q) {
    out << o.origin << ',' << o.user << ',' << format_double(o.q) << '\n';
  }
}

void write_trace(std::ostream& out, std::span<const TraceEvent> events) {
  out << "post_id,timestamp,user_id,repost_id\n";
  for (const TraceEvent& e : events) {
    out << e.post_id << ',' << format_double(e.timestamp) << ',' << e.user << ',' << e.repost_id << '\n';
  }
}

}  // namespace psirank
