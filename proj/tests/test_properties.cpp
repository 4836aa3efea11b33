#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "safeflow/enumerate.hpp"
#include "safeflow/metrics.hpp"
#include "safeflow/represent.hpp"
#include "safeflow/safety.hpp"

namespace safeflow {
namespace {

using EdgeSet = std::set<std::vector<EdgeId>>;

EdgeSet edge_set(const SafeReport& r) {
  EdgeSet out;
  for (const SafePath& p : r.raw) out.insert(p.path.edges);
  return out;
}

bool contained_in_some(const Path& p, const std::vector<Path>& in) {
  for (const Path& q : in) {
    if (std::search(q.edges.begin(), q.edges.end(), p.edges.begin(), p.edges.end()) != q.edges.end()) return true;
  }
  return false;
}

TEST(Completeness, MatchesOracleForBothDecompositions) {
  for (const GraphRecord& r : testing::small_suite(120, 77)) {
    const auto agg = aggregates(r.graph);
    EdgeSet want;
    for (const auto& p : oracle::safe_paths(r.graph)) want.insert(p);
    EXPECT_EQ(edge_set(safe_report(r.graph, agg, peel_decomposition(r.graph, agg))), want) << r.name;
    EXPECT_EQ(edge_set(safe_report(r.graph, agg, greedy_width(r.graph, agg))), want) << r.name;
  }
}

TEST(Characterization, WSafeMatchesExhaustiveCoverage) {
  for (const GraphRecord& r : testing::small_suite(60, 78)) {
    const auto agg = aggregates(r.graph);
    const auto all = oracle::unit_decompositions(r.graph);
    for (const auto& p : oracle::all_paths(r.graph)) {
      const Flow cover = oracle::min_coverage(all, p);
      for (Excess w = 1; w <= 3; ++w) {
        EXPECT_EQ(is_w_safe(r.graph, agg, p, w), cover >= static_cast<Flow>(w)) << r.name;
      }
    }
  }
}

TEST(Incremental, RandomWalksMatchFromScratch) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    RandomInstanceOptions o;
    o.num_transcripts = 2 + trial % 5;
    o.vertex_budget = 4 + trial % 9;
    o.seed = rng();
    const GraphRecord r = gen_random_instance(o);
    const auto agg = aggregates(r.graph);
    const Path host = path_from_vertices(r.graph, r.truth->transcripts[0].vertices);
    SafetyWindow w(r.graph, agg, host.edges, host.size() / 2);
    for (int step = 0; step < 20; ++step) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: if (w.can_extend_right()) w.extend_right(); break;
        case 1: if (w.can_extend_left()) w.extend_left(); break;
        case 2: if (w.size() > 1) w.shrink_left(); break;
        default: if (w.size() > 1) w.shrink_right(); break;
      }
      ASSERT_EQ(w.excess(), excess_flow(r.graph, agg, w.edges()));
    }
  }
}

TEST(Hierarchy, UnitigsExtendedSafeAndMetrics) {
  auto suite = testing::small_suite(100, 79);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomInstanceOptions o;
    o.num_transcripts = 1 + seed % 10;
    o.vertex_budget = 3 + seed % 14;
    o.seed = 1000 + seed;
    suite.push_back(gen_random_instance(o));
  }
  for (const GraphRecord& r : suite) {
    if (!r.truth) continue;
    const auto agg = aggregates(r.graph);
    const auto u = unitigs(r.graph);
    const auto e = extended_unitigs(r.graph);
    const auto d = greedy_width(r.graph, agg);
    std::vector<Path> s;
    for (const SafePath& p : safe_report(r.graph, agg, d).raw) s.push_back(p.path);
    for (const Path& p : u) EXPECT_TRUE(contained_in_some(p, e)) << r.name;
    for (const Path& p : e) EXPECT_TRUE(contained_in_some(p, s)) << r.name;

    auto vp = [&](const std::vector<Path>& ps) {
      std::vector<VertexPath> out;
      for (const Path& p : ps) out.push_back(path_vertices(r.graph, p));
      return out;
    };
    std::vector<Path> dp;
    for (const auto& w : d.paths) dp.push_back(w.path);
    const auto mu = evaluate(r.name, r.graph, *r.truth, "unitigs", vp(u), LengthUnit::kNodes);
    const auto me = evaluate(r.name, r.graph, *r.truth, "ext-unitigs", vp(e), LengthUnit::kNodes);
    const auto ms = evaluate(r.name, r.graph, *r.truth, "safe", vp(s), LengthUnit::kNodes);
    const auto mg = evaluate(r.name, r.graph, *r.truth, "greedy", vp(dp), LengthUnit::kNodes);
    EXPECT_EQ(mu.weighted_precision, 1);
    EXPECT_EQ(me.weighted_precision, 1);
    EXPECT_EQ(ms.weighted_precision, 1);
    EXPECT_LE(mu.max_relative_coverage, me.max_relative_coverage);
    EXPECT_LE(me.max_relative_coverage, ms.max_relative_coverage);
    EXPECT_LE(ms.max_relative_coverage, mg.max_relative_coverage);
  }
}

TEST(Funnels, EveryAlgorithmIsPerfect) {
  for (const GraphRecord& r : testing::funnel_suite(60, 80)) {
    const auto agg = aggregates(r.graph);
    std::set<std::vector<VertexId>> truth;
    for (const Transcript& t : r.truth->transcripts) truth.insert(t.vertices);
    std::vector<VertexPath> safe;
    for (const SafePath& p : safe_report(r.graph, agg, peel_decomposition(r.graph, agg)).raw) {
      safe.push_back(path_vertices(r.graph, p.path));
    }
    EXPECT_EQ(std::set<std::vector<VertexId>>(safe.begin(), safe.end()), truth);
    const auto row = evaluate(r.name, r.graph, *r.truth, "safe", safe, LengthUnit::kNodes);
    EXPECT_EQ(row.f_score, 1);
  }
}

}  // namespace
}  // namespace safeflow
