// psirank: batch front-end for the influence model, simulator and emulator.
//
// Every command reads its inputs, writes CSV outputs plus a manifest.json
// into --out-dir and is a pure function of inputs, flags and seed.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "psirank/emulator.hpp"
#include "psirank/error.hpp"
#include "psirank/generators.hpp"
#include "psirank/ingest.hpp"
#include "psirank/io.hpp"
#include "psirank/metrics.hpp"
#include "psirank/pagerank.hpp"
#include "psirank/propagation.hpp"
#include "psirank/simulator.hpp"
#include "psirank/solver.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace psirank;

namespace {

struct Common {
  std::string out_dir = ".";
  std::vector<std::string> argv;
};

class Output {
 public:
  Output(const Common& common, std::string command) : dir_(common.out_dir) {
    fs::create_directories(dir_);
    manifest_["command"] = std::move(command);
    manifest_["version"] = PSIRANK_VERSION;
    manifest_["argv"] = common.argv;
  }

  json& manifest() { return manifest_; }

  template <typename Writer>
  void write(const std::string& name, Writer&& writer) {
    AtomicFile file(dir_ / name);
    writer(file.stream());
    file.commit();
    manifest_["outputs"].push_back(name);
  }

  void finish() {
    manifest_["status"] = "complete";
    write_json("manifest.json", manifest_);
  }

 private:
  void write_json(const std::string& name, const json& j) {
    AtomicFile file(dir_ / name);
    file.stream() << j.dump(2) << '\n';
    file.commit();
  }

  fs::path dir_;
  json manifest_;
};

std::vector<UserId> parse_labels(const std::string& spec, std::size_t n_users) {
  std::string text = spec;
  if (!spec.empty() && spec.front() == '@') {
    std::ifstream in(spec.substr(1));
    if (!in) throw InvalidInput("cannot open label file " + spec.substr(1));
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::replace_if(text.begin(), text.end(), [](char c) { return c == ',' || c == '\n' || c == '\t' || c == '\r'; }, ' ');
  std::istringstream in(text);
  std::vector<UserId> labels;
  std::string tok;
  while (in >> tok) {
    UserId id = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw InvalidInput("bad label '" + tok + "'");
    if (id >= n_users) throw InvalidInput("label " + tok + " is not a user of the graph");
    labels.push_back(id);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  if (labels.empty()) throw InvalidInput("empty label list");
  return labels;
}

std::vector<std::size_t> parse_depths(const std::string& spec) {
  std::vector<std::size_t> depths;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t d = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) throw InvalidInput("bad depth '" + tok + "'");
    depths.push_back(d);
  }
  return depths;
}

LoadedGraph load_graph(const std::string& path, const std::string& id_map) {
  LoadedGraph g = read_edge_list(fs::path(path));
  if (!id_map.empty()) {
    auto names = read_id_map(id_map);
    if (names.size() < g.graph.size()) throw InvalidInput("id map covers fewer users than the graph");
    g.graph = SocialGraph::from_edges(g.graph.edges(), names.size());
    g.names = std::move(names);
  }
  return g;
}

bool numeric_names(const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (names[k] != std::to_string(k)) return false;
  }
  return true;
}

json bounds_json(const SpectralBounds& b) { return {{"min_row_sum", b.lower}, {"max_row_sum", b.upper}}; }

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::string kind = "ring";
  std::size_t n = 8;
  int depth = 9;
  double exponent = 2.5;
  double mean_degree = 3.0;
  std::uint64_t seed = 1;
  std::optional<double> lambda;
  std::optional<double> mu;
};

void run_generate(const Common& common, const GenerateArgs& a) {
  SocialGraph g;
  if (a.kind == "tree") {
    g = generate_binary_tree(a.depth);
  } else if (a.kind == "scale-free") {
    g = generate_scale_free(a.n, a.exponent, a.seed);
  } else if (a.kind == "erdos-renyi") {
    g = generate_erdos_renyi(a.n, a.mean_degree, a.seed);
  } else if (a.kind == "complete") {
    g = generate_complete(a.n);
  } else {
    g = generate_ring(a.n, a.mean_degree, a.seed);
  }
  Output out(common, "generate");
  out.write("graph.tsv", [&](std::ostream& os) { write_edge_list(os, g); });
  if (a.lambda || a.mu) {
    const auto rates = ActivityRates::homogeneous(g.size(), a.lambda.value_or(1.0), a.mu.value_or(1.0));
    rates.validate();
    out.write("rates.tsv", [&](std::ostream& os) { write_rates(os, rates); });
  }
  auto& m = out.manifest();
  m["kind"] = a.kind;
  m["seed"] = a.seed;
  m["users"] = g.size();
  m["edges"] = g.edge_count();
  out.finish();
}

struct SolveArgs {
  std::string graph;
  std::string rates;
  std::string id_map;
  double tol = 1e-10;
  std::size_t max_iter = 0;
  std::string labels;
  bool all_labels = false;
  std::string method = "iterative";
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  bool no_vectors = false;
};

void run_solve(const Common& common, const SolveArgs& a) {
  const LoadedGraph loaded = load_graph(a.graph, a.id_map);
  const std::size_t n = loaded.graph.size();
  const ActivityRates rates = read_rates(fs::path(a.rates), n);
  const PropagationSystem system = build_system(loaded.graph, rates);
  const SpectralBounds bounds = spectral_bounds(system);

  std::vector<UserId> labels;
  if (!a.labels.empty()) {
    labels = parse_labels(a.labels, n);
  } else {
    labels.resize(n);
    std::iota(labels.begin(), labels.end(), 0u);
  }
  const bool certified = bounds.upper < 1.0;
  if (!certified) {
    std::cerr << "warning: max row sum is 1; convergence is not certified by the row-sum bound\n";
  }

  SolveOptions opts;
  opts.tol = a.tol;
  opts.max_iter = a.max_iter;
  const SolveMethod method = a.method == "dense" ? SolveMethod::kDense : SolveMethod::kIterative;

  Output out(common, "solve");
  ScoreAccumulator acc(n);
  std::size_t max_iterations = 0;
  double max_residual = 0.0;
  out.write("vectors.csv", [&](std::ostream& os) {
    if (!a.no_vectors) write_vectors_header(os);
    solve_labels(system, labels, opts, method, a.workers, [&](InfluenceVectors&& v) {
      max_iterations = std::max(max_iterations, v.iterations);
      max_residual = std::max(max_residual, v.residual);
      if (!a.no_vectors) write_vectors(os, v);
      acc.add(v);
    });
  });
  const ScoreTable scores = acc.finish();
  out.write("scores.csv", [&](std::ostream& os) { write_scores(os, scores); });
  if (!numeric_names(loaded.names)) {
    out.write("id_map.tsv", [&](std::ostream& os) { write_id_map(os, loaded.names); });
  }

  auto& m = out.manifest();
  m["users"] = n;
  m["edges"] = loaded.graph.edge_count();
  m["labels_solved"] = labels.size();
  m["normalized"] = scores.complete;
  m["method"] = a.method;
  m["tol"] = a.tol;
  m["max_iter"] = a.max_iter > 0 ? a.max_iter : default_iteration_cap(a.tol, bounds.upper);
  m["workers"] = a.workers;
  m["max_iterations_used"] = max_iterations;
  m["max_final_residual"] = max_residual;
  m["spectral_bounds"] = bounds_json(bounds);
  m["certified"] = certified;
  m["leaderless_users"] = system.leaderless_count();
  out.finish();
}

struct RankArgs {
  std::string scores;
  std::string by = "psi";
};

void run_rank(const Common& common, const RankArgs& a) {
  const ScoreTable t = read_scores(a.scores);
  const auto& values = a.by == "psi_tilde" ? t.psi_tilde : t.psi;
  const auto order = rank(t.users, values);
  Output out(common, "rank");
  out.write("ranking.csv", [&](std::ostream& os) {
    os << "position,user_id," << a.by << '\n';
    std::vector<std::size_t> index(t.users.size());
    std::iota(index.begin(), index.end(), std::size_t{0});
    std::sort(index.begin(), index.end(), [&](auto x, auto y) { return t.users[x] < t.users[y]; });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
      const auto it = std::lower_bound(index.begin(), index.end(), order[pos],
                                       [&](std::size_t e, UserId u) { return t.users[e] < u; });
      os << pos + 1 << ',' << order[pos] << ',' << format_double(values[*it]) << '\n';
    }
  });
  out.manifest()["by"] = a.by;
  out.manifest()["users"] = t.users.size();
  out.finish();
}

struct PageRankArgs {
  std::string graph;
  std::string id_map;
  double beta = 0.85;
  double tol = 1e-12;
  std::size_t max_iter = 100000;
};

void run_pagerank(const Common& common, const PageRankArgs& a) {
  const LoadedGraph loaded = load_graph(a.graph, a.id_map);
  const PageRankResult r = pagerank(loaded.graph, a.beta, a.tol, a.max_iter);
  const auto order = rank(r.score);
  std::vector<std::size_t> position(r.score.size());
  for (std::size_t k = 0; k < order.size(); ++k) position[order[k]] = k + 1;
  Output out(common, "pagerank");
  out.write("pagerank.csv", [&](std::ostream& os) {
    os << "user_id,pagerank,rank\n";
    for (std::size_t u = 0; u < r.score.size(); ++u) {
      os << u << ',' << format_double(r.score[u]) << ',' << position[u] << '\n';
    }
  });
  auto& m = out.manifest();
  m["beta"] = a.beta;
  m["tol"] = a.tol;
  m["iterations"] = r.iterations;
  m["residual"] = r.residual;
  m["dangling_users"] = r.dangling;
  out.finish();
}

struct SimulateArgs {
  std::string graph;
  std::string rates;
  std::string id_map;
  SimulationConfig config;
  std::string selection = "random";
  std::string eviction = "random";
  std::string arrivals = "poisson";
  bool write_trace = false;
};

void run_simulate(const Common& common, SimulateArgs a) {
  const LoadedGraph loaded = load_graph(a.graph, a.id_map);
  const std::size_t n = loaded.graph.size();
  const ActivityRates rates = read_rates(fs::path(a.rates), n);
  a.config.policy.selection = parse_selection(a.selection);
  a.config.policy.eviction = parse_eviction(a.eviction);
  a.config.policy.arrivals = parse_arrivals(a.arrivals);
  a.config.record_trace = a.write_trace;

  Simulator sim(loaded.graph, rates, a.config);
  sim.run();
  const std::size_t violations = sim.conservation_violations();
  const SimulationResult r = sim.result();

  Output out(common, "simulate");
  ScoreAccumulator acc(n);
  out.write("vectors.csv", [&](std::ostream& os) {
    write_vectors_header(os);
    for (UserId i = 0; i < n; ++i) {
      const auto v = r.label_vectors(i);
      write_vectors(os, v);
      acc.add(v);
    }
  });
  out.write("scores.csv", [&](std::ostream& os) { write_scores(os, acc.finish(true)); });
  if (a.write_trace) out.write("trace.csv", [&](std::ostream& os) { write_trace(os, sim.trace()); });

  auto& m = out.manifest();
  m["seed"] = a.config.seed;
  m["events"] = r.events;
  m["warmup_events"] = r.warmup_events;
  m["warmup_fraction"] = a.config.warmup_fraction;
  m["self_posts"] = r.self_posts;
  m["reposts"] = r.reposts;
  m["skipped_reposts"] = r.skipped_reposts;
  m["measure_start"] = r.measure_start;
  m["measure_end"] = r.measure_end;
  m["M"] = a.config.newsfeed_size;
  m["K"] = a.config.wall_size;
  m["policy"] = {{"selection", to_string(a.config.policy.selection)},
                 {"eviction", to_string(a.config.policy.eviction)},
                 {"ttl", a.config.policy.ttl},
                 {"arrivals", to_string(a.config.policy.arrivals)},
                 {"cv2", a.config.policy.cv2}};
  m["conservation_violations"] = violations;
  out.finish();
  if (violations != 0) throw Error("conservation identity violated " + std::to_string(violations) + " times");
}

struct TraceArgs {
  std::string trace;
  std::size_t error_budget = 0;
  std::optional<double> window_start;
  std::optional<double> window_end;
};

ReplayWindow window_of(const ParsedTrace& t, const TraceArgs& a) {
  if (t.events.empty() && (!a.window_start || !a.window_end)) throw InvalidInput("trace has no events");
  return {a.window_start.value_or(t.events.empty() ? 0.0 : t.events.front().timestamp),
          a.window_end.value_or(t.events.empty() ? 0.0 : t.events.back().timestamp)};
}

json trace_json(const ParsedTrace& t) {
  json diags = json::array();
  for (const auto& d : t.diagnostics) diags.push_back({{"line", d.line}, {"message", d.message}});
  return {{"events", t.events.size()}, {"users", t.n_users()}, {"malformed_lines", diags}};
}

void run_emulate(const Common& common, const TraceArgs& a) {
  const ParsedTrace t = parse_trace(fs::path(a.trace), a.error_budget);
  const ReplayWindow w = window_of(t, a);
  const EmulatorResult r = replay(t.events, t.n_users(), w);
  const std::size_t n = t.n_users();

  std::vector<double> total(n, 0.0);
  for (const Occupancy& o : r.q) total[o.origin] += o.q;
  ScoreTable scores;
  for (UserId u = 0; u < n; ++u) {
    scores.users.push_back(u);
    scores.psi.push_back(r.psi[u]);
    scores.psi_tilde.push_back(total[u] / static_cast<double>(n));
  }
  const auto order = rank(scores.psi);
  scores.rank.resize(n);
  for (std::size_t k = 0; k < n; ++k) scores.rank[order[k]] = k + 1;

  Output out(common, "emulate");
  out.write("occupancy.csv", [&](std::ostream& os) { write_occupancy(os, r); });
  out.write("scores.csv", [&](std::ostream& os) { write_scores(os, scores); });
  out.write("id_map.tsv", [&](std::ostream& os) { write_id_map(os, t.user_names); });
  auto& m = out.manifest();
  m["trace"] = trace_json(t);
  m["window"] = {w.start, w.end};
  m["dropped_unknown_reposts"] = r.dropped_unknown;
  out.finish();
}

void run_infer_graph(const Common& common, const TraceArgs& a) {
  const ParsedTrace t = parse_trace(fs::path(a.trace), a.error_budget);
  const StarGraph s = infer_star_graph(t.events, t.n_users());
  Output out(common, "infer-graph");
  out.write("graph.tsv", [&](std::ostream& os) { write_edge_list(os, s.graph); });
  out.write("id_map.tsv", [&](std::ostream& os) { write_id_map(os, t.user_names); });
  std::size_t leaderless = 0;
  for (UserId u = 0; u < s.graph.size(); ++u) leaderless += s.graph.leaders(u).empty();
  auto& m = out.manifest();
  m["trace"] = trace_json(t);
  m["edges"] = s.graph.edge_count();
  m["repost_pairs"] = s.repost_pairs;
  m["self_pairs"] = s.self_pairs;
  m["unresolved_reposts"] = s.unresolved;
  m["leaderless_users"] = leaderless;
  out.finish();
}

void run_estimate_rates(const Common& common, const TraceArgs& a) {
  const ParsedTrace t = parse_trace(fs::path(a.trace), a.error_budget);
  const ReplayWindow w = window_of(t, a);
  const RateEstimate est = estimate_rates(t.events, w, t.n_users());
  Output out(common, "estimate-rates");
  out.write("rates.tsv", [&](std::ostream& os) { write_rates(os, est.rates); });
  out.write("id_map.tsv", [&](std::ostream& os) { write_id_map(os, t.user_names); });
  auto& m = out.manifest();
  m["trace"] = trace_json(t);
  m["window"] = {w.start, w.end};
  m["inactive_users"] = est.inactive;
  out.finish();
  if (!est.inactive.empty()) {
    std::cerr << "warning: " << est.inactive.size() << " users have no events in the window\n";
  }
}

struct CompareArgs {
  std::string a;
  std::string b;
  std::string depths;
  std::string by = "psi";
};

void run_compare(const Common& common, const CompareArgs& c) {
  const ScoreTable ta = read_scores(c.a);
  const ScoreTable tb = read_scores(c.b);
  const auto& va = c.by == "psi_tilde" ? ta.psi_tilde : ta.psi;
  const auto& vb = c.by == "psi_tilde" ? tb.psi_tilde : tb.psi;
  const auto ra = rank(ta.users, va);
  const auto rb = rank(tb.users, vb);
  std::vector<std::size_t> depths;
  if (c.depths.empty()) {
    depths = {ra.size()};
  } else {
    depths = parse_depths(c.depths);
  }
  const auto common_prop = common_users_proportion(ra, rb, depths);
  const auto pairs = rank_scatter(ra, rb);

  // Scores aligned by user id for the correlation.
  auto by_user = [](const ScoreTable& t, const std::vector<double>& v) {
    std::vector<std::pair<UserId, double>> out;
    for (std::size_t k = 0; k < t.users.size(); ++k) out.emplace_back(t.users[k], v[k]);
    std::sort(out.begin(), out.end());
    std::vector<double> values;
    for (const auto& [u, x] : out) values.push_back(x);
    return values;
  };
  const double r = pearson(by_user(ta, va), by_user(tb, vb));

  Output out(common, "compare");
  out.write("common.csv", [&](std::ostream& os) { write_common_proportion(os, depths, common_prop); });
  out.write("scatter.csv", [&](std::ostream& os) { write_rank_scatter(os, pairs); });
  auto& m = out.manifest();
  m["by"] = c.by;
  m["users"] = ra.size();
  m["pearson"] = std::isnan(r) ? json(nullptr) : json(r);
  out.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Influence ranking in social platforms: model solver, simulator and trace emulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(PSIRANK_VERSION));

  Common common;
  common.argv.assign(argv, argv + argc);
  auto out_dir = [&](CLI::App* sub) {
    sub->add_option("--out-dir", common.out_dir, "Directory for output files")->capture_default_str();
  };

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic follower graph");
  generate->add_option("--kind", gen.kind, "tree, scale-free, erdos-renyi, complete or ring")
      ->check(CLI::IsMember({"tree", "scale-free", "erdos-renyi", "complete", "ring"}))
      ->capture_default_str();
  generate->add_option("--n", gen.n, "Number of users")->capture_default_str();
  generate->add_option("--depth", gen.depth, "Tree depth")->capture_default_str();
  generate->add_option("--exponent", gen.exponent, "Power-law exponent (scale-free)")->capture_default_str();
  generate->add_option("--mean-degree", gen.mean_degree, "Mean degree (erdos-renyi) or followers (ring)")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--lambda", gen.lambda, "Also write homogeneous rates with this lambda");
  generate->add_option("--mu", gen.mu, "Also write homogeneous rates with this mu");
  out_dir(generate);

  SolveArgs sol;
  auto* solve = app.add_subcommand("solve", "Solve the propagation model and score users");
  solve->add_option("--graph", sol.graph, "Edge list (follower<TAB>leader)")->required()->check(CLI::ExistingFile);
  solve->add_option("--rates", sol.rates, "Rates file (user<TAB>lambda<TAB>mu)")->required()->check(CLI::ExistingFile);
  solve->add_option("--id-map", sol.id_map, "id<TAB>external_id sidecar")->check(CLI::ExistingFile);
  solve->add_option("--tol", sol.tol, "Infinity-norm tolerance")->capture_default_str();
  solve->add_option("--max-iter", sol.max_iter, "Iteration cap (0 = automatic)")->capture_default_str();
  auto* labels_opt = solve->add_option("--labels", sol.labels, "Comma separated labels or @file");
  solve->add_flag("--all-labels", sol.all_labels, "Solve every label (default)")->excludes(labels_opt);
  solve->add_option("--method", sol.method, "iterative or dense")
      ->check(CLI::IsMember({"iterative", "dense"}))
      ->capture_default_str();
  solve->add_option("--workers", sol.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_flag("--no-vectors", sol.no_vectors, "Skip the per-label p/q output");
  out_dir(solve);

  RankArgs rk;
  auto* rank_cmd = app.add_subcommand("rank", "Order users from a scores file");
  rank_cmd->add_option("--scores", rk.scores, "Scores CSV")->required()->check(CLI::ExistingFile);
  rank_cmd->add_option("--by", rk.by, "psi or psi_tilde")->check(CLI::IsMember({"psi", "psi_tilde"}))->capture_default_str();
  out_dir(rank_cmd);

  PageRankArgs pr;
  auto* pr_cmd = app.add_subcommand("pagerank", "PageRank over the follower graph");
  pr_cmd->add_option("--graph", pr.graph, "Edge list")->required()->check(CLI::ExistingFile);
  pr_cmd->add_option("--id-map", pr.id_map, "id<TAB>external_id sidecar")->check(CLI::ExistingFile);
  pr_cmd->add_option("--beta", pr.beta, "Damping factor in [0, 1)")->capture_default_str();
  pr_cmd->add_option("--tol", pr.tol, "Infinity-norm tolerance")->capture_default_str();
  pr_cmd->add_option("--max-iter", pr.max_iter, "Iteration cap")->capture_default_str();
  out_dir(pr_cmd);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Event-driven simulation of the platform");
  sim_cmd->add_option("--graph", sim.graph, "Edge list")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--rates", sim.rates, "Rates file")->required()->check(CLI::ExistingFile);
  sim_cmd->add_option("--id-map", sim.id_map, "id<TAB>external_id sidecar")->check(CLI::ExistingFile);
  sim_cmd->add_option("--events", sim.config.events, "Posts and re-posts to execute")->capture_default_str();
  sim_cmd->add_option("--seed", sim.config.seed, "Random seed")->capture_default_str();
  sim_cmd->add_option("--M", sim.config.newsfeed_size, "Newsfeed size")->capture_default_str();
  sim_cmd->add_option("--K", sim.config.wall_size, "Wall size")->capture_default_str();
  sim_cmd->add_option("--selection", sim.selection, "random, newest, most_popular or least_popular")
      ->capture_default_str();
  sim_cmd->add_option("--eviction", sim.eviction, "random, fifo or ttl")->capture_default_str();
  sim_cmd->add_option("--ttl", sim.config.policy.ttl, "Newsfeed post lifetime for ttl eviction");
  sim_cmd->add_option("--arrivals", sim.arrivals, "poisson, hyperexponential or deterministic")
      ->capture_default_str();
  sim_cmd->add_option("--cv2", sim.config.policy.cv2, "Squared coefficient of variation (hyperexponential)")
      ->capture_default_str();
  sim_cmd->add_option("--warmup", sim.config.warmup_fraction, "Share of events excluded from averages")
      ->capture_default_str();
  sim_cmd->add_flag("--write-trace", sim.write_trace, "Also write the event trace");
  out_dir(sim_cmd);

  TraceArgs tr;
  auto trace_options = [&](CLI::App* sub, bool window) {
    sub->add_option("--trace", tr.trace, "Trace CSV/TSV: post_id,timestamp,user_id,repost_id")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--error-budget", tr.error_budget, "Malformed lines tolerated")->capture_default_str();
    if (window) {
      sub->add_option("--window-start", tr.window_start, "Window start (default: first event)");
      sub->add_option("--window-end", tr.window_end, "Window end (default: last event)");
    }
    out_dir(sub);
  };
  auto* emulate = app.add_subcommand("emulate", "Replay a trace and measure Wall occupancy");
  trace_options(emulate, true);
  auto* infer = app.add_subcommand("infer-graph", "Infer the star follower graph from re-posts");
  trace_options(infer, false);
  auto* estimate = app.add_subcommand("estimate-rates", "Estimate per-user posting rates from a trace");
  trace_options(estimate, true);

  CompareArgs cmp;
  auto* compare = app.add_subcommand("compare", "Compare two rankings");
  compare->add_option("--a", cmp.a, "First scores CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--b", cmp.b, "Second scores CSV")->required()->check(CLI::ExistingFile);
  compare->add_option("--depths", cmp.depths, "Comma separated depths X (default: all users)");
  compare->add_option("--by", cmp.by, "psi or psi_tilde")->check(CLI::IsMember({"psi", "psi_tilde"}))->capture_default_str();
  out_dir(compare);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) run_generate(common, gen);
    if (*solve) run_solve(common, sol);
    if (*rank_cmd) run_rank(common, rk);
    if (*pr_cmd) run_pagerank(common, pr);
    if (*sim_cmd) run_simulate(common, sim);
    if (*emulate) run_emulate(common, tr);
    if (*infer) run_infer_graph(common, tr);
    if (*estimate) run_estimate_rates(common, tr);
    if (*compare) run_compare(common, cmp);
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.residual() << " after " << e.iterations()
              << " iterations)\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
