#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracle.hpp"
#include "safeflow/flow_graph.hpp"

namespace safeflow {
namespace {

using testing::g0;
using testing::g1;

TEST(Validate, G0IsValid) { EXPECT_TRUE(validate(g0()).empty()); }

TEST(Validate, ConservationViolationNamesBothVertices) {
  FlowGraph g(4, {{0, 1, 3}, {1, 3, 2}, {1, 2, 2}, {0, 2, 2}, {2, 3, 3}});
  const auto v = validate(g);
  ASSERT_EQ(v.size(), 2u);
  for (const Violation& x : v) EXPECT_EQ(x.rule, Violation::Rule::kConservation);
  EXPECT_EQ(v[0].vertex, 1u);
  EXPECT_EQ(v[1].vertex, 2u);
}

TEST(Validate, SingleEdgeIsValid) { EXPECT_TRUE(validate(FlowGraph(2, {{0, 1, 5}})).empty()); }

TEST(Validate, ZeroWeightAndSelfLoop) {
  const auto zero = validate(FlowGraph(2, {{0, 1, 0}}));
  ASSERT_FALSE(zero.empty());
  EXPECT_EQ(zero[0].rule, Violation::Rule::kZeroWeight);
  EXPECT_EQ(zero[0].edge, 0u);
  const auto loop = validate(FlowGraph(2, {{0, 1, 1}, {1, 1, 1}}));
  ASSERT_FALSE(loop.empty());
  EXPECT_EQ(loop[0].rule, Violation::Rule::kSelfLoop);
}

TEST(Validate, CycleReported) {
  const auto v = validate(FlowGraph(2, {{0, 1, 1}, {1, 0, 1}}));
  ASSERT_FALSE(v.empty());
  bool cycle = false;
  for (const Violation& x : v) cycle = cycle || x.rule == Violation::Rule::kCycle;
  EXPECT_TRUE(cycle);
}

TEST(Validate, OverflowReported) {
  const Flow big = Flow{1} << 62;
  const auto v = validate(FlowGraph(3, {{0, 2, big}, {1, 2, big}}));
  bool overflow = false;
  for (const Violation& x : v) overflow = overflow || x.rule == Violation::Rule::kOverflow;
  EXPECT_TRUE(overflow);
  EXPECT_THROW(aggregates(FlowGraph(3, {{0, 2, big}, {1, 2, big}})), FlowOverflowError);
}

TEST(FlowGraph, RejectsEndpointOutOfRange) { EXPECT_THROW(FlowGraph(2, {{0, 2, 1}}), GraphError); }

TEST(FlowGraph, ParallelEdgesKeepIdentity) {
  FlowGraph g(2, {{0, 1, 1}, {0, 1, 2}});
  ASSERT_EQ(g.out_edges(0).size(), 2u);
  EXPECT_EQ(g.out_edges(0)[0], 0u);
  EXPECT_EQ(g.out_edges(0)[1], 1u);
  EXPECT_EQ(g.in_degree(1), 2u);
}

TEST(Aggregates, G0Sums) {
  const auto agg = aggregates(g0());
  EXPECT_EQ(agg.f_out(0), 5u);
  EXPECT_EQ(agg.f_in(3), 5u);
  EXPECT_EQ(agg.f_in(2), 3u);
}

TEST(Aggregates, SingleEdge) {
  const auto agg = aggregates(FlowGraph(2, {{0, 1, 5}}));
  EXPECT_EQ(agg.f_out(0), 5u);
  EXPECT_EQ(agg.f_in(0), 0u);
}

TEST(Aggregates, CycleRejected) {
  const FlowGraph g = g0();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  edges.push_back({3, 0, 1});
  EXPECT_THROW(aggregates(FlowGraph(4, edges)), NotADagError);
}

TEST(Aggregates, TopoTiesByAscendingId) {
  FlowGraph g(4, {{3, 1, 1}, {2, 0, 1}});
  EXPECT_EQ(aggregates(g).topo_order, (std::vector<VertexId>{2, 0, 3, 1}));
}

TEST(Aggregates, IndependentOfEdgeOrder) {
  const FlowGraph g = g0();
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::reverse(edges.begin(), edges.end());
  const auto a = aggregates(g);
  const auto b = aggregates(FlowGraph(4, edges));
  EXPECT_EQ(a.in, b.in);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.topo_order, b.topo_order);
}

TEST(SourcesAndSinks, G0) {
  const auto t = sources_and_sinks(aggregates(g0()));
  EXPECT_EQ(t.sources, std::vector<VertexId>{0});
  EXPECT_EQ(t.sinks, std::vector<VertexId>{3});
}

TEST(SourcesAndSinks, DisjointEdges) {
  const auto t = sources_and_sinks(aggregates(FlowGraph(4, {{0, 1, 1}, {2, 3, 1}})));
  EXPECT_EQ(t.sources, (std::vector<VertexId>{0, 2}));
  EXPECT_EQ(t.sinks, (std::vector<VertexId>{1, 3}));
}

TEST(SourcesAndSinks, LoneVertexIsBoth) {
  const auto t = sources_and_sinks(aggregates(FlowGraph(1, {})));
  EXPECT_EQ(t.sources, std::vector<VertexId>{0});
  EXPECT_EQ(t.sinks, std::vector<VertexId>{0});
}

TEST(IsFunnel, Examples) {
  EXPECT_TRUE(is_funnel(g0()));
  EXPECT_FALSE(is_funnel(g1()));
  EXPECT_TRUE(is_funnel(testing::single_path(4, 3)));
}

TEST(IsFunnel, AgreesWithPrivateEdgeOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 8)(rng);
    std::vector<Edge> edges;
    std::bernoulli_distribution coin(0.35);
    for (VertexId a = 0; a < n; ++a) {
      for (VertexId b = a + 1; b < n; ++b) {
        if (coin(rng)) edges.push_back({a, b, 1});
        if (coin(rng) && coin(rng)) edges.push_back({a, b, 1});
      }
    }
    const FlowGraph g(n, edges);
    EXPECT_EQ(is_funnel(g), oracle::is_funnel(g)) << "trial " << trial;
  }
}

TEST(Paths, VertexRoundTripPicksSmallestParallelEdge) {
  FlowGraph g(3, {{0, 1, 1}, {1, 2, 1}, {0, 1, 1}});
  const std::vector<VertexId> vs{0, 1, 2};
  const Path p = path_from_vertices(g, vs);
  EXPECT_EQ(p.edges, (std::vector<EdgeId>{0, 1}));
  EXPECT_EQ(path_vertices(g, p), vs);
  const std::vector<VertexId> bad{0, 2};
  EXPECT_THROW(path_from_vertices(g, bad), InvalidPathError);
  const std::vector<EdgeId> gap{0, 0};
  EXPECT_THROW(check_path(g, gap), InvalidPathError);
  EXPECT_THROW(check_path(g, std::vector<EdgeId>{}), InvalidPathError);
}

TEST(Superimpose, SumsSharedEdges) {
  std::vector<Transcript> ts{{{0, 1, 2}, 2}, {{0, 1, 3}, 1}};
  const FlowGraph g = superimpose(ts, 4);
  EXPECT_EQ(g.vertex_count(), 6u);
  EXPECT_TRUE(validate(g).empty());
  const auto agg = aggregates(g);
  const Path ab = path_from_vertices(g, std::vector<VertexId>{0, 1});
  EXPECT_EQ(g.edge(ab.edges[0]).weight, 3u);
  EXPECT_EQ(agg.f_out(4), 3u);
  EXPECT_EQ(agg.f_in(5), 3u);
  EXPECT_TRUE(g.is_auxiliary(4));
  EXPECT_TRUE(g.is_auxiliary(5));
  EXPECT_FALSE(g.is_auxiliary(0));
}

TEST(Superimpose, OneTranscriptIsAFunnelPath) {
  std::vector<Transcript> ts{{{0, 1, 2}, 4}};
  const FlowGraph g = superimpose(ts, 3);
  EXPECT_TRUE(validate(g).empty());
  EXPECT_TRUE(is_funnel(g));
  EXPECT_EQ(g.edge_count(), 4u);
}

TEST(Superimpose, ReproducesG1) {
  // Terminals 0 and 6 are given inside the universe.
  std::vector<Transcript> ts{{{1, 3, 4}, 2}, {{2, 3, 5}, 2}};
  const FlowGraph g = superimpose(ts, 7, {{{0, 6}}});
  std::multiset<std::tuple<VertexId, VertexId, Flow>> got, want;
  for (const Edge& e : g.edges()) got.insert({e.tail, e.head, e.weight});
  const FlowGraph expected = g1();
  for (const Edge& e : expected.edges()) want.insert({e.tail, e.head, e.weight});
  EXPECT_EQ(got, want);
  EXPECT_FALSE(is_funnel(g));
}

TEST(Superimpose, Rejections) {
  EXPECT_THROW(superimpose(std::vector<Transcript>{{{0}, 0}}, 1), GraphError);
  EXPECT_THROW(superimpose(std::vector<Transcript>{{{}, 1}}, 1), GraphError);
  EXPECT_THROW(superimpose(std::vector<Transcript>{{{0, 1}, 1}, {{1, 0}, 1}}, 2), NotADagError);
}

TEST(Superimpose, AlwaysValidAndBalanced) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    RandomInstanceOptions o;
    o.num_transcripts = 1 + trial % 6;
    o.vertex_budget = 2 + trial % 9;
    o.seed = rng();
    const GraphRecord r = gen_random_instance(o);
    ASSERT_TRUE(validate(r.graph).empty());
    const auto agg = aggregates(r.graph);
    const auto t = sources_and_sinks(agg);
    Flow out = 0, in = 0;
    for (VertexId s : t.sources) out += agg.f_out(s);
    for (VertexId s : t.sinks) in += agg.f_in(s);
    EXPECT_EQ(out, in);
  }
}

}  // namespace
}  // namespace safeflow
