#include "safeflow/flow_graph.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <sstream>
#include <tuple>

namespace safeflow {

namespace {

constexpr Flow kMaxSignedFlow = static_cast<Flow>(std::numeric_limits<Excess>::max());

void build_csr(std::size_t n, std::span<const Edge> edges, bool by_tail,
               std::vector<std::size_t>& offsets, std::vector<EdgeId>& list) {
  offsets.assign(n + 1, 0);
  for (const Edge& e : edges) ++offsets[(by_tail ? e.tail : e.head) + 1];
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  list.resize(edges.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  // Edge ids are visited in ascending order, so each bucket stays sorted.
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    list[cursor[by_tail ? e.tail : e.head]++] = id;
  }
}

// Kahn's algorithm with a min-heap for ascending-id tie breaking. Returns
// fewer than n vertices when the graph has a cycle.
std::vector<VertexId> topological_order(const FlowGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<std::size_t> remaining(n);
  std::priority_queue<VertexId, std::vector<VertexId>, std::greater<>> ready;
  for (VertexId v = 0; v < n; ++v) {
    remaining[v] = graph.in_degree(v);
    if (remaining[v] == 0) ready.push(v);
  }
  std::vector<VertexId> order;
  order.reserve(n);
  while (!ready.empty()) {
    VertexId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (EdgeId id : graph.out_edges(v)) {
      VertexId w = graph.edge(id).head;
      if (--remaining[w] == 0) ready.push(w);
    }
  }
  return order;
}

bool checked_add(Flow& acc, Flow value) {
  if (__builtin_add_overflow(acc, value, &acc)) return false;
  return acc <= kMaxSignedFlow;
}

}  // namespace

FlowGraph::FlowGraph(std::size_t vertex_count, std::vector<Edge> edges, std::string name)
    : vertex_count_(vertex_count), edges_(std::move(edges)), name_(std::move(name)),
      auxiliary_(vertex_count, false) {
  if (edges_.size() > std::numeric_limits<EdgeId>::max()) throw GraphError("too many edges");
  for (std::size_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    if (e.tail >= vertex_count_ || e.head >= vertex_count_) {
      std::ostringstream msg;
      msg << "edge " << id << " (" << e.tail << " -> " << e.head << ") references a vertex >= "
          << vertex_count_;
      throw GraphError(msg.str());
    }
  }
  build_csr(vertex_count_, edges_, true, out_offsets_, out_list_);
  build_csr(vertex_count_, edges_, false, in_offsets_, in_list_);
}

std::span<const EdgeId> FlowGraph::out_edges(VertexId v) const {
  return std::span<const EdgeId>(out_list_).subspan(out_offsets_.at(v),
                                                    out_offsets_[v + 1] - out_offsets_[v]);
}

std::span<const EdgeId> FlowGraph::in_edges(VertexId v) const {
  return std::span<const EdgeId>(in_list_).subspan(in_offsets_.at(v),
                                                   in_offsets_[v + 1] - in_offsets_[v]);
}

void FlowGraph::set_node_lengths(std::vector<std::uint64_t> lengths) {
  if (lengths.size() != vertex_count_) throw GraphError("node length table size mismatch");
  node_lengths_ = std::move(lengths);
}

bool FlowGraph::is_auxiliary(VertexId v) const { return v < auxiliary_.size() && auxiliary_[v]; }

void FlowGraph::mark_auxiliary(VertexId v) { auxiliary_.at(v) = true; }

std::string_view rule_name(Violation::Rule rule) {
  switch (rule) {
    case Violation::Rule::kZeroWeight: return "zero-weight";
    case Violation::Rule::kSelfLoop: return "self-loop";
    case Violation::Rule::kCycle: return "cycle";
    case Violation::Rule::kConservation: return "conservation";
    case Violation::Rule::kOverflow: return "overflow";
  }
  return "unknown";
}

std::vector<Violation> validate(const FlowGraph& graph) {
  std::vector<Violation> found;
  const auto edges = graph.edges();
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (e.weight == 0) {
      found.push_back({Violation::Rule::kZeroWeight, std::nullopt, id,
                       "edge " + std::to_string(id) + " has zero weight"});
    }
    if (e.tail == e.head) {
      found.push_back({Violation::Rule::kSelfLoop, e.tail, id,
                       "edge " + std::to_string(id) + " is a self-loop"});
    }
  }

  std::vector<Flow> in(graph.vertex_count(), 0), out(graph.vertex_count(), 0);
  bool overflow = false;
  for (EdgeId id = 0; id < edges.size(); ++id) {
    const Edge& e = edges[id];
    if (!checked_add(out[e.tail], e.weight) || !checked_add(in[e.head], e.weight)) {
      found.push_back({Violation::Rule::kOverflow, std::nullopt, id,
                       "flow total overflows at edge " + std::to_string(id)});
      overflow = true;
      break;
    }
  }

  if (topological_order(graph).size() != graph.vertex_count()) {
    found.push_back({Violation::Rule::kCycle, std::nullopt, std::nullopt, "graph has a cycle"});
  }

  if (!overflow) {
    for (VertexId v = 0; v < graph.vertex_count(); ++v) {
      if (in[v] != 0 && out[v] != 0 && in[v] != out[v]) {
        found.push_back({Violation::Rule::kConservation, v, std::nullopt,
                         "vertex " + std::to_string(v) + ": in " + std::to_string(in[v]) +
                             " != out " + std::to_string(out[v])});
      }
    }
  }
  return found;
}

FlowAggregates aggregates(const FlowGraph& graph) {
  FlowAggregates agg;
  agg.in.assign(graph.vertex_count(), 0);
  agg.out.assign(graph.vertex_count(), 0);
  for (const Edge& e : graph.edges()) {
    if (!checked_add(agg.out[e.tail], e.weight) || !checked_add(agg.in[e.head], e.weight)) {
      throw FlowOverflowError("flow total exceeds signed 64-bit range");
    }
  }
  agg.topo_order = topological_order(graph);
  if (agg.topo_order.size() != graph.vertex_count()) throw NotADagError("graph has a cycle");
  return agg;
}

Terminals sources_and_sinks(const FlowAggregates& aggregates) {
  Terminals t;
  for (VertexId v = 0; v < aggregates.in.size(); ++v) {
    if (aggregates.in[v] == 0) t.sources.push_back(v);
    if (aggregates.out[v] == 0) t.sinks.push_back(v);
  }
  return t;
}

bool is_funnel(const FlowGraph& graph) {
  const auto order = topological_order(graph);
  if (order.size() != graph.vertex_count()) throw NotADagError("graph has a cycle");
  // after_merge[v]: some vertex with in-degree >= 2 reaches v (v included).
  std::vector<bool> after_merge(graph.vertex_count(), false);
  for (VertexId v : order) {
    bool reached = graph.in_degree(v) >= 2;
    for (EdgeId id : graph.in_edges(v)) reached = reached || after_merge[graph.edge(id).tail];
    after_merge[v] = reached;
    if (reached && graph.out_degree(v) >= 2) return false;
  }
  return true;
}

void check_path(const FlowGraph& graph, std::span<const EdgeId> edges) {
  if (edges.empty()) throw InvalidPathError("empty path");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i] >= graph.edge_count()) {
      throw InvalidPathError("edge id " + std::to_string(edges[i]) + " out of range");
    }
    if (i > 0 && graph.edge(edges[i - 1]).head != graph.edge(edges[i]).tail) {
      throw InvalidPathError("edges " + std::to_string(edges[i - 1]) + " and " +
                             std::to_string(edges[i]) + " are not contiguous");
    }
  }
}

std::vector<VertexId> path_vertices(const FlowGraph& graph, std::span<const EdgeId> edges) {
  check_path(graph, edges);
  std::vector<VertexId> vertices;
  vertices.reserve(edges.size() + 1);
  vertices.push_back(graph.edge(edges.front()).tail);
  for (EdgeId id : edges) vertices.push_back(graph.edge(id).head);
  return vertices;
}

Path path_from_vertices(const FlowGraph& graph, std::span<const VertexId> vertices) {
  if (vertices.size() < 2) throw InvalidPathError("a path needs at least two vertices");
  Path path;
  path.edges.reserve(vertices.size() - 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const VertexId u = vertices[i];
    const VertexId v = vertices[i + 1];
    if (u >= graph.vertex_count() || v >= graph.vertex_count()) {
      throw InvalidPathError("vertex id out of range");
    }
    std::optional<EdgeId> found;
    for (EdgeId id : graph.out_edges(u)) {
      if (graph.edge(id).head == v) {
        found = id;
        break;
      }
    }
    if (!found) {
      throw InvalidPathError("no edge " + std::to_string(u) + " -> " + std::to_string(v));
    }
    path.edges.push_back(*found);
  }
  return path;
}

FlowGraph superimpose(std::span<const Transcript> transcripts, std::size_t universe,
                      const SuperimposeOptions& options) {
  VertexId source = static_cast<VertexId>(universe);
  VertexId sink = static_cast<VertexId>(universe + 1);
  std::size_t n = universe + 2;
  if (options.terminals) {
    std::tie(source, sink) = *options.terminals;
    n = universe;
    if (source >= n || sink >= n || source == sink) throw GraphError("invalid terminal ids");
  }

  std::map<std::pair<VertexId, VertexId>, Flow> weights;
  auto add = [&](VertexId u, VertexId v, Flow w) {
    Flow& slot = weights[{u, v}];
    if (!checked_add(slot, w)) throw FlowOverflowError("superimposed weight overflows");
  };
  for (std::size_t t = 0; t < transcripts.size(); ++t) {
    const Transcript& tr = transcripts[t];
    if (tr.weight == 0) throw GraphError("transcript " + std::to_string(t) + " has non-positive weight");
    if (tr.vertices.empty()) throw GraphError("transcript " + std::to_string(t) + " is empty");
    for (VertexId v : tr.vertices) {
      if (v >= universe || (options.terminals && (v == source || v == sink))) {
        throw GraphError("transcript " + std::to_string(t) + " uses invalid vertex " +
                         std::to_string(v));
      }
    }
    add(source, tr.vertices.front(), tr.weight);
    for (std::size_t i = 0; i + 1 < tr.vertices.size(); ++i) {
      add(tr.vertices[i], tr.vertices[i + 1], tr.weight);
    }
    add(tr.vertices.back(), sink, tr.weight);
  }

  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) edges.push_back({key.first, key.second, w});
  FlowGraph graph(n, std::move(edges));
  if (topological_order(graph).size() != n) throw NotADagError("transcripts form a cycle");
  graph.mark_auxiliary(source);
  graph.mark_auxiliary(sink);
  return graph;
}

}  // namespace safeflow
