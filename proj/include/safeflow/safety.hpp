#pragma once

#include <cstddef>
#include <span>

#include "safeflow/flow_graph.hpp"

namespace safeflow {

/// Excess flow of a path through the diverging form: the sum of its edge
/// weights minus f_out of every internal vertex. A single edge has excess
/// equal to its weight. O(|path|); throws InvalidPathError.
Excess excess_flow(const FlowGraph& graph, const FlowAggregates& agg, std::span<const EdgeId> path);
inline Excess excess_flow(const FlowGraph& graph, const FlowAggregates& agg, const Path& path) {
  return excess_flow(graph, agg, std::span<const EdgeId>(path.edges));
}

/// Same value through the converging form (f_in of internal vertices).
Excess excess_flow_converging(const FlowGraph& graph, const FlowAggregates& agg,
                              std::span<const EdgeId> path);

/// A path is w-safe iff its excess flow is at least w. Throws
/// std::invalid_argument for w <= 0.
bool is_w_safe(const FlowGraph& graph, const FlowAggregates& agg, std::span<const EdgeId> path,
               Excess w);

struct Verification {
  bool safe = false;
  /// Largest w for which the path is w-safe (may be <= 0 when unsafe).
  Excess weight = 0;
};

Verification verify_path(const FlowGraph& graph, const FlowAggregates& agg,
                         std::span<const EdgeId> path);

/// A contiguous edge interval [left, right] of a host path together with its
/// excess flow, maintained incrementally in O(1) per step.
class SafetyWindow {
 public:
  /// Single-edge window at host[index].
  SafetyWindow(const FlowGraph& graph, const FlowAggregates& agg, std::span<const EdgeId> host,
               std::size_t index);

  std::size_t left() const { return left_; }
  std::size_t right() const { return right_; }
  std::size_t size() const { return right_ - left_ + 1; }
  Excess excess() const { return excess_; }
  std::span<const EdgeId> host() const { return host_; }
  std::span<const EdgeId> edges() const { return host_.subspan(left_, size()); }

  bool can_extend_right() const { return right_ + 1 < host_.size(); }
  bool can_extend_left() const { return left_ > 0; }

  /// Excess the window would have after appending host[right + 1].
  Excess excess_after_extend_right() const;

  /// Appends `edge`, which must be host[right + 1]. Excess drops by
  /// f_out(u) - f(u, v). Throws InvalidPathError otherwise.
  SafetyWindow& extend_right(EdgeId edge);
  SafetyWindow& extend_right();
  /// Prepends host[left - 1]; excess drops by f_in(v) - f(u, v).
  SafetyWindow& extend_left();
  /// Drops host[left]; excess rises by f_in(v) - f(u, v). Throws
  /// InvalidPathError on a single-edge window.
  SafetyWindow& shrink_left();
  /// Drops host[right]; excess rises by f_out(u) - f(u, v).
  SafetyWindow& shrink_right();

 private:
  const FlowGraph* graph_;
  const FlowAggregates* agg_;
  std::span<const EdgeId> host_;
  std::size_t left_;
  std::size_t right_;
  Excess excess_;
};

}  // namespace safeflow
