#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "safeflow/decompose.hpp"
#include "safeflow/enumerate.hpp"
#include "safeflow/flow_graph.hpp"

namespace safeflow {

/// A maximal safe path located inside a carrier, as carrier edge indices.
struct Interval {
  std::size_t left = 0;
  std::size_t right = 0;
  Excess excess = 0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// A minimal-length subpath of one decomposition path covering one or more
/// overlapping (or touching) maximal safe paths.
struct ConciseEntry {
  Path carrier;
  std::vector<Interval> intervals;
  std::size_t host_path_index = 0;
  /// Position of carrier.edges[0] inside the host path.
  std::size_t host_offset = 0;
};

struct SafePath {
  Path path;
  Excess excess = 0;
};

struct SafeReport {
  /// Maximal safe paths, each reported once, none contained in another.
  std::vector<SafePath> raw;
  std::vector<ConciseEntry> concise;

  /// Total edges over raw paths.
  std::size_t raw_size() const;
  /// Total edges over concise carriers.
  std::size_t concise_size() const;
};

/// Collapses consecutive windows of the same host that overlap or touch
/// (next.left <= current.right + 1) into one carrier. Windows must be sorted
/// by (host_path_index, left).
std::vector<ConciseEntry> merge_windows(const Decomposition& decomposition,
                                        std::span<const MaximalSafeWindow> windows);

/// Drops raw paths that duplicate an earlier one or occur as a contiguous
/// subpath of another, using one Aho-Corasick automaton over edge-id
/// sequences. Surviving intervals are re-cut into minimal carriers.
SafeReport dedup(std::span<const ConciseEntry> entries);

/// Returns the paths that are neither a duplicate of an earlier path nor a
/// strict subpath of any other, in input order.
std::vector<Path> remove_contained(std::span<const Path> paths);

/// Candidate decomposition, two-pointer scan, merge and dedup in one call.
SafeReport safe_report(const FlowGraph& graph, const FlowAggregates& agg,
                       const Decomposition& decomposition, const EnumerateOptions& options = {});

}  // namespace safeflow
