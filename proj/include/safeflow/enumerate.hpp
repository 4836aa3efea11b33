#pragma once

#include <cstddef>
#include <vector>

#include "safeflow/decompose.hpp"
#include "safeflow/flow_graph.hpp"

namespace safeflow {

/// Maximal paths whose internal vertices have in-degree 1 and out-degree 1,
/// in topological order of their first edge.
std::vector<Path> unitigs(const FlowGraph& graph, bool include_single_edges = false);

/// Every unitig (single edges included) extended left through unit
/// in-degree vertices and right through unit out-degree vertices. Identical
/// results are reported once.
std::vector<Path> extended_unitigs(const FlowGraph& graph);

/// An interval [left, right] of a decomposition path that is safe and cannot
/// grow inside that path without becoming unsafe.
struct MaximalSafeWindow {
  std::size_t host_path_index = 0;
  std::size_t left = 0;
  std::size_t right = 0;
  Excess excess = 0;

  std::size_t size() const { return right - left + 1; }
  friend bool operator==(const MaximalSafeWindow&, const MaximalSafeWindow&) = default;
};

struct EnumerateOptions {
  /// Emit windows consisting of a single edge. Turning this off mirrors
  /// evaluation scripts that ignore single edges.
  bool include_single_edges = true;
};

/// Two-pointer scan over every path of a candidate decomposition. Windows are
/// sorted by (host_path_index, left) and have strictly increasing left and
/// right indices within each host. Linear in the decomposition size.
std::vector<MaximalSafeWindow> safe_and_complete(const FlowGraph& graph, const FlowAggregates& agg,
                                                 const Decomposition& decomposition,
                                                 const EnumerateOptions& options = {});

/// Windows of a single host path; `host_index` is copied into each window.
void scan_host_path(const FlowGraph& graph, const FlowAggregates& agg, const Path& host,
                    std::size_t host_index, const EnumerateOptions& options,
                    std::vector<MaximalSafeWindow>& out);

}  // namespace safeflow
