#include "safeflow/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "safeflow/safety.hpp"

namespace safeflow {

namespace {

bool is_unit(const FlowGraph& graph, VertexId v) {
  return graph.in_degree(v) == 1 && graph.out_degree(v) == 1;
}

}  // namespace

std::vector<Path> unitigs(const FlowGraph& graph, bool include_single_edges) {
  const FlowAggregates agg = aggregates(graph);
  std::vector<Path> result;
  for (VertexId u : agg.topo_order) {
    if (is_unit(graph, u)) continue;
    for (EdgeId first : graph.out_edges(u)) {
      Path p;
      p.edges.push_back(first);
      VertexId at = graph.edge(first).head;
      while (is_unit(graph, at)) {
        const EdgeId next = graph.out_edges(at).front();
        p.edges.push_back(next);
        at = graph.edge(next).head;
      }
      if (include_single_edges || p.size() > 1) result.push_back(std::move(p));
    }
  }
  return result;
}

std::vector<Path> extended_unitigs(const FlowGraph& graph) {
  std::vector<Path> result;
  std::set<std::vector<EdgeId>> seen;
  for (const Path& unitig : unitigs(graph, true)) {
    std::deque<EdgeId> edges(unitig.edges.begin(), unitig.edges.end());
    for (VertexId at = graph.edge(edges.front()).tail; graph.in_degree(at) == 1;) {
      const EdgeId prev = graph.in_edges(at).front();
      edges.push_front(prev);
      at = graph.edge(prev).tail;
    }
    for (VertexId at = graph.edge(edges.back()).head; graph.out_degree(at) == 1;) {
      const EdgeId next = graph.out_edges(at).front();
      edges.push_back(next);
      at = graph.edge(next).head;
    }
    Path p{std::vector<EdgeId>(edges.begin(), edges.end())};
    if (seen.insert(p.edges).second) result.push_back(std::move(p));
  }
  return result;
}

void scan_host_path(const FlowGraph& graph, const FlowAggregates& agg, const Path& host,
                    std::size_t host_index, const EnumerateOptions& options,
                    std::vector<MaximalSafeWindow>& out) {
  if (host.empty()) return;
  auto emit = [&](const SafetyWindow& w) {
    if (!options.include_single_edges && w.size() == 1) return;
    out.push_back({host_index, w.left(), w.right(), w.excess()});
  };

  // A single edge always has positive excess, so the window never empties.
  SafetyWindow window(graph, agg, host.edges, 0);
  for (;;) {
    while (window.can_extend_right() && window.excess_after_extend_right() > 0) {
      window.extend_right();
    }
    emit(window);
    if (!window.can_extend_right()) break;
    window.extend_right();
    while (window.excess() <= 0) window.shrink_left();
  }
}

std::vector<MaximalSafeWindow> safe_and_complete(const FlowGraph& graph, const FlowAggregates& agg,
                                                 const Decomposition& decomposition,
                                                 const EnumerateOptions& options) {
  std::vector<MaximalSafeWindow> windows;
  for (std::size_t i = 0; i < decomposition.paths.size(); ++i) {
    scan_host_path(graph, agg, decomposition.paths[i].path, i, options, windows);
  }
  return windows;
}

}  // namespace safeflow
