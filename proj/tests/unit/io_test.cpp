#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "psirank/error.hpp"
#include "psirank/ingest.hpp"
#include "psirank/io.hpp"

using namespace psirank;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("psirank_io_test_" + name);
}

}  // namespace

TEST(EdgeList, NumericRoundTrip) {
  std::stringstream buf;
  write_edge_list(buf, fixtures::toy_graph());
  const auto loaded = read_edge_list(buf);
  EXPECT_EQ(loaded.graph.edges(), fixtures::toy_graph().edges());
  EXPECT_EQ(loaded.names, (std::vector<std::string>{"0", "1", "2", "3"}));
}

TEST(EdgeList, StringIdsAreMappedInSortedOrder) {
  std::istringstream in("# follower leader\nbob\talice\ncarol alice\nalice,bob\n");
  const auto loaded = read_edge_list(in);
  EXPECT_EQ(loaded.names, (std::vector<std::string>{"alice", "bob", "carol"}));
  EXPECT_TRUE(loaded.graph.follows(1, 0));
  EXPECT_TRUE(loaded.graph.follows(2, 0));
  EXPECT_TRUE(loaded.graph.follows(0, 1));
}

TEST(EdgeList, ExplicitUserCountAddsIsolatedUsers) {
  std::istringstream in("0\t1\n");
  EXPECT_EQ(read_edge_list(in, 5).graph.size(), 5u);
}

TEST(EdgeList, MalformedLineNamesTheLine) {
  std::istringstream in("0\t1\n2\n");
  try {
    (void)read_edge_list(in);
    FAIL();
  } catch (const InvalidInput& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(Rates, RoundTripAndValidation) {
  ActivityRates r{{0.1, 0.25, 3.0}, {1.0, 0.0, 1e-7}};
  std::stringstream buf;
  write_rates(buf, r);
  const auto back = read_rates(buf, 3);
  EXPECT_EQ(back.lambda, r.lambda);
  EXPECT_EQ(back.mu, r.mu);

  std::istringstream missing("0\t1\t1\n");
  EXPECT_THROW(read_rates(missing, 2), InvalidInput);
  std::istringstream inactive("0\t0\t0\n");
  EXPECT_THROW(read_rates(inactive, 1), InvalidInput);
}

TEST(Scores, FileRoundTrip) {
  ScoreTable t{{0, 1, 2}, {0.5, 0.25, 0.125}, {0.4, 0.35, 0.25}, {1, 2, 3}, true};
  const auto path = temp_path("scores.csv");
  {
    AtomicFile f(path);
    write_scores(f.stream(), t);
    EXPECT_FALSE(std::filesystem::exists(path));
    f.commit();
  }
  EXPECT_TRUE(std::filesystem::exists(path));
  const auto back = read_scores(path);
  EXPECT_EQ(back.users, t.users);
  EXPECT_EQ(back.psi, t.psi);
  EXPECT_EQ(back.psi_tilde, t.psi_tilde);
  EXPECT_EQ(back.rank, t.rank);
  std::filesystem::remove(path);
}

TEST(AtomicFile, UncommittedOutputStaysPartial) {
  const auto path = temp_path("partial.csv");
  {
    AtomicFile f(path);
    f.stream() << "half";
  }
  EXPECT_FALSE(std::filesystem::exists(path));
  EXPECT_TRUE(std::filesystem::exists(path.string() + ".partial"));
  std::filesystem::remove(path.string() + ".partial");
}

TEST(Vectors, ZeroRowsAreOmitted) {
  InfluenceVectors v;
  v.label = 2;
  v.p = {0.0, 0.5, 0.0};
  v.q = {0.0, 0.25, 1.0};
  std::ostringstream out;
  write_vectors_header(out);
  write_vectors(out, v);
  EXPECT_EQ(out.str(), "label,user,p,q\n2,1,0.5,0.25\n2,2,0,1\n");
}

TEST(Trace, TimestampsRoundTripExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1e6);
  std::vector<TraceEvent> events;
  double t = 0.0;
  for (std::int64_t k = 0; k < 100; ++k) events.push_back({k, t += u(rng) / 7.0, 0, k == 0 ? -1 : k - 1});
  std::stringstream buf;
  write_trace(buf, events);
  const auto back = parse_trace(buf);
  ASSERT_EQ(back.events.size(), events.size());
  for (std::size_t k = 0; k < events.size(); ++k) EXPECT_EQ(back.events[k].timestamp, events[k].timestamp);
}

TEST(IdMap, FileRoundTrip) {
  const std::vector<std::string> names{"alice", "bob"};
  const auto path = temp_path("ids.tsv");
  {
    std::ofstream out(path);
    write_id_map(out, names);
  }
  EXPECT_EQ(read_id_map(path), names);
  std::filesystem::remove(path);
}
