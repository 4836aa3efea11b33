#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace safeflow {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;
/// Flow units carried by an edge. Always strictly positive on a valid graph.
using Flow = std::uint64_t;
/// Signed flow units; excess flow may become zero or negative.
using Excess = std::int64_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
 public:
  using Error::Error;
};

class NotADagError : public GraphError {
 public:
  using GraphError::GraphError;
};

class FlowOverflowError : public GraphError {
 public:
  using GraphError::GraphError;
};

class InvalidPathError : public Error {
 public:
  using Error::Error;
};

struct Edge {
  VertexId tail = 0;
  VertexId head = 0;
  Flow weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A path given as a sequence of edge ids. Edge ids (not vertex pairs) keep
/// parallel edges apart.
struct Path {
  std::vector<EdgeId> edges;

  std::size_t size() const { return edges.size(); }
  bool empty() const { return edges.empty(); }

  friend auto operator<=>(const Path&, const Path&) = default;
};

/// A weighted vertex sequence, e.g. a ground-truth transcript.
struct Transcript {
  std::vector<VertexId> vertices;
  Flow weight = 0;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

/// Edge-weighted directed multigraph. Adjacency lists are built once at
/// construction and list edge ids in ascending order.
class FlowGraph {
 public:
  FlowGraph() = default;
  /// Throws GraphError when an edge endpoint is not below vertex_count.
  FlowGraph(std::size_t vertex_count, std::vector<Edge> edges, std::string name = {});

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::span<const Edge> edges() const { return edges_; }

  std::span<const EdgeId> out_edges(VertexId v) const;
  std::span<const EdgeId> in_edges(VertexId v) const;
  std::size_t out_degree(VertexId v) const { return out_edges(v).size(); }
  std::size_t in_degree(VertexId v) const { return in_edges(v).size(); }

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Bases per vertex; absent when only node-based metrics are available.
  const std::optional<std::vector<std::uint64_t>>& node_lengths() const { return node_lengths_; }
  void set_node_lengths(std::vector<std::uint64_t> lengths);

  /// Auxiliary vertices (artificial global source/sink) carry no content and
  /// are excluded from path lengths.
  bool is_auxiliary(VertexId v) const;
  void mark_auxiliary(VertexId v);

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::string name_;
  std::optional<std::vector<std::uint64_t>> node_lengths_;
  std::vector<bool> auxiliary_;

  // CSR adjacency.
  std::vector<std::size_t> out_offsets_;
  std::vector<EdgeId> out_list_;
  std::vector<std::size_t> in_offsets_;
  std::vector<EdgeId> in_list_;
};

struct Violation {
  enum class Rule { kZeroWeight, kSelfLoop, kCycle, kConservation, kOverflow };

  Rule rule;
  std::optional<VertexId> vertex;
  std::optional<EdgeId> edge;
  std::string message;
};

std::string_view rule_name(Violation::Rule rule);

/// Checks every flow-graph invariant. An empty result means the graph is a
/// valid flow graph.
std::vector<Violation> validate(const FlowGraph& graph);

struct FlowAggregates {
  std::vector<Flow> in;
  std::vector<Flow> out;
  std::vector<VertexId> topo_order;

  Flow f_in(VertexId v) const { return in[v]; }
  Flow f_out(VertexId v) const { return out[v]; }
};

/// Per-vertex in/out flow and a topological order with ties broken by
/// ascending vertex id. Throws NotADagError on a cycle and FlowOverflowError
/// when a vertex total does not fit signed 64-bit arithmetic.
FlowAggregates aggregates(const FlowGraph& graph);

struct Terminals {
  std::vector<VertexId> sources;
  std::vector<VertexId> sinks;
};

Terminals sources_and_sinks(const FlowAggregates& aggregates);

/// True iff every source-to-sink path owns an edge used by no other
/// source-to-sink path. Equivalent to: no vertex with in-degree >= 2 reaches
/// a vertex with out-degree >= 2.
bool is_funnel(const FlowGraph& graph);

/// Vertex sequence of a contiguous edge path. Throws InvalidPathError.
std::vector<VertexId> path_vertices(const FlowGraph& graph, std::span<const EdgeId> edges);
inline std::vector<VertexId> path_vertices(const FlowGraph& graph, const Path& path) {
  return path_vertices(graph, std::span<const EdgeId>(path.edges));
}

/// Resolves a vertex sequence to edges, picking the smallest edge id among
/// parallel edges. Throws InvalidPathError when a consecutive pair has no edge.
Path path_from_vertices(const FlowGraph& graph, std::span<const VertexId> vertices);

/// Throws InvalidPathError unless the edges form a non-empty contiguous path.
void check_path(const FlowGraph& graph, std::span<const EdgeId> edges);

struct SuperimposeOptions {
  /// When unset, the global source and sink are appended as new vertices
  /// `universe` and `universe + 1`. When set they must be ids inside the
  /// universe not used by any transcript.
  std::optional<std::pair<VertexId, VertexId>> terminals;
};

/// Builds the flow graph of a set of weighted transcripts: weights are summed
/// on shared edges and a global source (sink) is linked to the first (last)
/// vertex of every transcript. The terminals are marked auxiliary and edges are
/// emitted in ascending (tail, head) order. Throws GraphError on a
/// non-positive weight, an empty transcript or an id outside the universe,
/// and NotADagError when the transcripts together form a cycle.
FlowGraph superimpose(std::span<const Transcript> transcripts, std::size_t universe,
                      const SuperimposeOptions& options = {});

}  // namespace safeflow
