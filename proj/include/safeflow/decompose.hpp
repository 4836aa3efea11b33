#pragma once

#include <cstddef>
#include <vector>

#include "safeflow/flow_graph.hpp"

namespace safeflow {

class DecompositionError : public Error {
 public:
  using Error::Error;
};

struct WeightedPath {
  Path path;
  Flow weight = 0;

  friend auto operator<=>(const WeightedPath&, const WeightedPath&) = default;
};

/// Source-to-sink paths whose weights sum to the flow of every edge.
struct Decomposition {
  std::vector<WeightedPath> paths;

  std::size_t k() const { return paths.size(); }
  /// Total number of edges over all paths.
  std::size_t total_size() const;
};

/// Classical path peeling: from the smallest-id source with residual flow,
/// follow the first positive-residual out-edge in edge-id order to a sink,
/// remove the bottleneck, repeat. Throws DecompositionError when the residual
/// gets stuck, which only happens on invalid input.
Decomposition peel_decomposition(const FlowGraph& graph, const FlowAggregates& agg);

/// Greedy-width: repeatedly remove a source-to-sink path of maximum
/// bottleneck residual. Ties prefer the smallest-id source, then the
/// smallest-id outgoing edge at every vertex.
Decomposition greedy_width(const FlowGraph& graph, const FlowAggregates& agg);

/// Widest residual source-to-sink path and its bottleneck; an empty path when
/// no residual flow is left.
WeightedPath widest_path(const FlowGraph& graph, const FlowAggregates& agg,
                         const std::vector<Flow>& residual);

/// True iff per-edge weight sums equal f(e) and every path is a contiguous
/// source-to-sink path with positive weight.
bool validate_decomposition(const FlowGraph& graph, const Decomposition& decomposition);

}  // namespace safeflow
