#include "safeflow/decompose.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace safeflow {

namespace {

constexpr Flow kUnbounded = std::numeric_limits<Flow>::max();

void subtract(const Path& path, Flow weight, std::vector<Flow>& residual) {
  for (EdgeId id : path.edges) residual[id] -= weight;
}

}  // namespace

std::size_t Decomposition::total_size() const {
  std::size_t total = 0;
  for (const WeightedPath& p : paths) total += p.path.size();
  return total;
}

Decomposition peel_decomposition(const FlowGraph& graph, const FlowAggregates& agg) {
  std::vector<Flow> residual(graph.edge_count());
  for (EdgeId id = 0; id < graph.edge_count(); ++id) residual[id] = graph.edge(id).weight;

  auto first_positive = [&](VertexId v) -> std::optional<EdgeId> {
    for (EdgeId id : graph.out_edges(v)) {
      if (residual[id] > 0) return id;
    }
    return std::nullopt;
  };

  Decomposition result;
  for (VertexId source : sources_and_sinks(agg).sources) {
    while (auto start = first_positive(source)) {
      WeightedPath wp;
      wp.weight = kUnbounded;
      std::optional<EdgeId> next = start;
      VertexId at = source;
      while (next) {
        wp.path.edges.push_back(*next);
        wp.weight = std::min(wp.weight, residual[*next]);
        at = graph.edge(*next).head;
        next = first_positive(at);
      }
      if (agg.f_out(at) != 0) {
        throw DecompositionError("residual flow stuck at vertex " + std::to_string(at) +
                                 "; flow conservation does not hold");
      }
      subtract(wp.path, wp.weight, residual);
      result.paths.push_back(std::move(wp));
    }
  }
  if (std::any_of(residual.begin(), residual.end(), [](Flow f) { return f != 0; })) {
    throw DecompositionError("flow left on edges unreachable from any source");
  }
  return result;
}

WeightedPath widest_path(const FlowGraph& graph, const FlowAggregates& agg,
                         const std::vector<Flow>& residual) {
  const std::size_t n = graph.vertex_count();
  // width[v]: widest residual path from v to a sink; 0 means none.
  std::vector<Flow> width(n, 0);
  std::vector<std::optional<EdgeId>> choice(n);
  for (auto it = agg.topo_order.rbegin(); it != agg.topo_order.rend(); ++it) {
    const VertexId v = *it;
    if (agg.f_out(v) == 0) {
      width[v] = kUnbounded;
      continue;
    }
    for (EdgeId id : graph.out_edges(v)) {
      if (residual[id] == 0) continue;
      const Flow w = std::min(residual[id], width[graph.edge(id).head]);
      // Strict comparison keeps the smallest edge id among ties.
      if (w > width[v]) {
        width[v] = w;
        choice[v] = id;
      }
    }
  }

  WeightedPath best;
  std::optional<VertexId> start;
  for (VertexId v = 0; v < n; ++v) {
    if (agg.f_in(v) != 0 || !choice[v]) continue;
    if (!start || width[v] > width[*start]) start = v;
  }
  if (!start) return best;
  best.weight = width[*start];
  for (VertexId at = *start; choice[at];) {
    best.path.edges.push_back(*choice[at]);
    at = graph.edge(*choice[at]).head;
  }
  return best;
}

Decomposition greedy_width(const FlowGraph& graph, const FlowAggregates& agg) {
  std::vector<Flow> residual(graph.edge_count());
  for (EdgeId id = 0; id < graph.edge_count(); ++id) residual[id] = graph.edge(id).weight;
  std::size_t positive_edges = graph.edge_count();

  Decomposition result;
  while (positive_edges > 0) {
    WeightedPath wp = widest_path(graph, agg, residual);
    if (wp.path.empty() || wp.weight == 0) {
      throw DecompositionError("no residual source-to-sink path; flow conservation does not hold");
    }
    subtract(wp.path, wp.weight, residual);
    for (EdgeId id : wp.path.edges) positive_edges -= residual[id] == 0 ? 1 : 0;
    result.paths.push_back(std::move(wp));
  }
  return result;
}

bool validate_decomposition(const FlowGraph& graph, const Decomposition& decomposition) {
  FlowAggregates agg;
  try {
    agg = aggregates(graph);
  } catch (const GraphError&) {
    return false;
  }
  std::vector<Flow> sums(graph.edge_count(), 0);
  for (const WeightedPath& wp : decomposition.paths) {
    if (wp.weight == 0 || wp.path.empty()) return false;
    try {
      check_path(graph, wp.path.edges);
    } catch (const InvalidPathError&) {
      return false;
    }
    if (agg.f_in(graph.edge(wp.path.edges.front()).tail) != 0) return false;
    if (agg.f_out(graph.edge(wp.path.edges.back()).head) != 0) return false;
    for (EdgeId id : wp.path.edges) {
      if (__builtin_add_overflow(sums[id], wp.weight, &sums[id])) return false;
    }
  }
  for (EdgeId id = 0; id < graph.edge_count(); ++id) {
    if (sums[id] != graph.edge(id).weight) return false;
  }
  return true;
}

}  // namespace safeflow
