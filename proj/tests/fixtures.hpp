#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "safeflow/flow_graph.hpp"
#include "safeflow/generators.hpp"

namespace safeflow::testing {

// G0: s=0 u=1 v=2 t=3.
inline FlowGraph g0() {
  return FlowGraph(4, {{0, 1, 3}, {1, 3, 2}, {1, 2, 1}, {0, 2, 2}, {2, 3, 3}}, "g0");
}

// G1: s=0 a=1 b=2 c=3 x=4 y=5 t=6.
inline FlowGraph g1() {
  return FlowGraph(7, {{0, 1, 2}, {0, 2, 2}, {1, 3, 2}, {2, 3, 2}, {3, 4, 2}, {3, 5, 2}, {4, 6, 2}, {5, 6, 2}},
                   "g1");
}

inline FlowGraph single_path(std::size_t vertices, Flow w) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < vertices; ++v) edges.push_back({v, v + 1, w});
  return FlowGraph(vertices, std::move(edges), "path");
}

inline std::set<std::vector<VertexId>> vertex_set(const FlowGraph& g, const std::vector<Path>& paths) {
  std::set<std::vector<VertexId>> out;
  for (const Path& p : paths) out.insert(path_vertices(g, p));
  return out;
}

// Splits one edge of weight >= 2 into two parallel edges, if any exists.
inline FlowGraph with_parallel_split(const FlowGraph& g, std::mt19937_64& rng) {
  std::vector<EdgeId> heavy;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).weight >= 2) heavy.push_back(e);
  }
  if (heavy.empty()) return g;
  const EdgeId pick = heavy[std::uniform_int_distribution<std::size_t>(0, heavy.size() - 1)(rng)];
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  const Flow w = edges[pick].weight;
  const Flow part = std::uniform_int_distribution<Flow>(1, w - 1)(rng);
  edges[pick].weight = part;
  edges.push_back({edges[pick].tail, edges[pick].head, w - part});
  return FlowGraph(g.vertex_count(), std::move(edges), g.name() + "-split");
}

// Seeded instances with at most 7 vertices and total flow at most 6. Every
// third instance carries a parallel edge when one can be split off.
inline std::vector<GraphRecord> small_suite(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GraphRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    RandomInstanceOptions o;
    o.num_transcripts = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    o.vertex_budget = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    o.weights = WeightMode::kUniform;
    o.max_weight = 2;
    o.seed = rng();
    GraphRecord r = gen_random_instance(o);
    if (i % 3 == 2) {
      r.graph = with_parallel_split(r.graph, rng);
      r.truth.reset();
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<GraphRecord> funnel_suite(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GraphRecord> out;
  for (std::size_t i = 0; i < count; ++i) {
    FunnelOptions o;
    o.paths = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    o.out_tree_size = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    o.in_tree_size = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    o.seed = rng();
    out.push_back(gen_funnel(o));
  }
  return out;
}

}  // namespace safeflow::testing
