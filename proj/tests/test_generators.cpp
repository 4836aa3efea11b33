#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "safeflow/generators.hpp"
#include "safeflow/represent.hpp"
#include "safeflow/safety.hpp"

namespace safeflow {
namespace {

std::string emit(const GraphRecord& r) {
  std::ostringstream out;
  emit_graph_record(out, r);
  return out.str();
}

TEST(SimulateAbundances, DeterministicAndPositive) {
  const auto a = simulate_abundances(200, 42);
  EXPECT_EQ(a, simulate_abundances(200, 42));
  EXPECT_NE(a, simulate_abundances(200, 43));
  EXPECT_LE(a.size(), 200u);
  for (Flow v : a) EXPECT_GE(v, 1u);
  EXPECT_THROW(simulate_abundances(0, 1), std::invalid_argument);
  EXPECT_THROW(simulate_abundances(3, 1, -4, 0), std::invalid_argument);
}

TEST(SimulateAbundances, DropsValuesRoundingToZero) {
  // Underlying normal around -12: nearly every draw rounds to 0.
  EXPECT_LT(simulate_abundances(100, 1, -12, 0.5).size(), 5u);
}

TEST(AppendixFamily, WorstK2MatchesOracle) {
  const GraphRecord r = gen_appendix_family(AppendixKind::kWorst, 2);
  ASSERT_TRUE(validate(r.graph).empty());
  EXPECT_EQ(r.graph.vertex_count(), 8u);
  std::set<std::vector<VertexId>> got;
  for (const auto& p : oracle::safe_paths(r.graph)) got.insert(path_vertices(r.graph, Path{p}));
  // a1=0 a2=1 c=2,3 d=4,5 b1=6 b2=7: [a1 .. b1] and [a2 .. b2] per cross edge,
  // plus the two unit leaks.
  std::set<std::vector<VertexId>> want{{0, 1}, {6, 7}};
  for (VertexId c : {2, 3}) {
    for (VertexId d : {4, 5}) {
      want.insert({0, 1, c, d, 6});
      want.insert({1, c, d, 6, 7});
    }
  }
  EXPECT_EQ(got, want);
}

TEST(AppendixFamily, BestK2ConciseBeatsDecomposition) {
  const GraphRecord r = gen_appendix_family(AppendixKind::kBest, 2);
  ASSERT_TRUE(validate(r.graph).empty());
  const auto agg = aggregates(r.graph);
  const auto d = peel_decomposition(r.graph, agg);
  const auto report = safe_report(r.graph, agg, d);
  EXPECT_LT(report.concise_size(), d.total_size());
}

TEST(AppendixFamily, ValidParallelAndRejectsSmallK) {
  for (std::size_t k : {2, 3, 4, 7, 10}) {
    for (auto density : {CrossDensity::kBand, CrossDensity::kComplete}) {
      for (auto kind : {AppendixKind::kWorst, AppendixKind::kBest}) {
        const GraphRecord r = gen_appendix_family(kind, k, density);
        ASSERT_TRUE(validate(r.graph).empty()) << r.name;
        const auto t = sources_and_sinks(aggregates(r.graph));
        EXPECT_EQ(t.sources, std::vector<VertexId>{0});
        EXPECT_EQ(t.sinks, std::vector<VertexId>{static_cast<VertexId>(4 * k - 1)});
      }
      const GraphRecord best = gen_appendix_family(AppendixKind::kBest, k, density);
      std::set<std::pair<VertexId, VertexId>> seen;
      bool parallel = false;
      for (const Edge& e : best.graph.edges()) parallel = parallel || !seen.insert({e.tail, e.head}).second;
      EXPECT_TRUE(parallel);
    }
  }
  EXPECT_THROW(gen_appendix_family(AppendixKind::kWorst, 1), std::invalid_argument);
}

TEST(AppendixFamily, WorstExcessIsIMinusJPlusOne) {
  const std::size_t k = 5;
  const GraphRecord r = gen_appendix_family(AppendixKind::kWorst, k);
  const auto agg = aggregates(r.graph);
  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= k; ++j) {
      std::vector<VertexId> vs;
      for (std::size_t t = i; t <= k; ++t) vs.push_back(static_cast<VertexId>(t - 1));
      vs.push_back(static_cast<VertexId>(k));          // c_1
      vs.push_back(static_cast<VertexId>(2 * k));      // d_1
      for (std::size_t t = 1; t <= j; ++t) vs.push_back(static_cast<VertexId>(3 * k + t - 1));
      const Path p = path_from_vertices(r.graph, vs);
      EXPECT_EQ(excess_flow(r.graph, agg, p), static_cast<Excess>(i) - static_cast<Excess>(j) + 1);
    }
  }
}

TEST(RandomInstance, TruthAndDeterminism) {
  RandomInstanceOptions o;
  o.num_transcripts = 1;
  o.seed = 9;
  const GraphRecord one = gen_random_instance(o);
  EXPECT_TRUE(is_funnel(one.graph));
  EXPECT_EQ(one.truth->k(), 1u);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    o.num_transcripts = 1 + seed % 9;
    o.vertex_budget = 1 + seed % 15;
    o.seed = seed;
    const GraphRecord r = gen_random_instance(o);
    ASSERT_TRUE(validate(r.graph).empty());
    EXPECT_TRUE(truth_reproduces_graph(r.graph, *r.truth));
    EXPECT_EQ(emit(r), emit(gen_random_instance(o)));
  }
  EXPECT_THROW((gen_random_instance({0, 3, 1})), std::invalid_argument);
}

TEST(RandomInstance, SmallSuiteStaysInsideOracleGuard) {
  for (const GraphRecord& r : testing::small_suite(300, 1)) {
    EXPECT_LE(r.graph.vertex_count(), 7u);
    EXPECT_NO_THROW(oracle::check_guard(r.graph));
    EXPECT_NO_THROW(oracle::safe_paths(r.graph));
  }
}

TEST(Funnel, GeneratedFunnelsAreFunnels) {
  for (const GraphRecord& r : testing::funnel_suite(100, 2)) {
    ASSERT_TRUE(validate(r.graph).empty());
    EXPECT_TRUE(is_funnel(r.graph));
    EXPECT_TRUE(truth_reproduces_graph(r.graph, *r.truth));
  }
}

}  // namespace
}  // namespace safeflow
