#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "safeflow/flow_graph.hpp"

namespace safeflow {

using Rational = boost::multiprecision::cpp_rational;
using VertexPath = std::vector<VertexId>;

enum class LengthUnit { kBases, kNodes };

std::string_view unit_name(LengthUnit unit);

struct GroundTruth {
  std::vector<Transcript> transcripts;

  std::size_t k() const { return transcripts.size(); }
};

/// Bases (sum of node lengths) or node count over the non-auxiliary
/// vertices of a path. Throws Error for bases without node lengths.
std::uint64_t path_length(std::span<const VertexId> path, const FlowGraph& graph, LengthUnit unit);

/// True iff `inner` occurs as a contiguous vertex subsequence of `outer`.
bool is_vertex_subpath(std::span<const VertexId> inner, std::span<const VertexId> outer);

/// Length of correct reported paths (subpaths of some transcript) over the
/// length of all reported paths; 1 when nothing of positive length is
/// reported.
Rational weighted_precision(std::span<const VertexPath> reported, const GroundTruth& truth,
                            const FlowGraph& graph, LengthUnit unit);

/// Average over transcripts of the longest segment of any reported path
/// inside the transcript, relative to the transcript length. Transcripts of
/// length 0 are skipped and noted in `warnings`. 0 when nothing is reported
/// or no transcript has positive length.
Rational max_relative_coverage(std::span<const VertexPath> reported, const GroundTruth& truth,
                               const FlowGraph& graph, LengthUnit unit,
                               std::vector<std::string>* warnings = nullptr);

/// Harmonic mean; 0 when both are 0.
Rational f_score(const Rational& coverage, const Rational& precision);

struct MetricRow {
  std::string graph_id;
  std::size_t k = 0;
  std::string algorithm;
  Rational max_relative_coverage;
  Rational weighted_precision;
  Rational f_score;
  LengthUnit unit = LengthUnit::kNodes;
};

MetricRow evaluate(std::string graph_id, const FlowGraph& graph, const GroundTruth& truth,
                   std::string algorithm, std::span<const VertexPath> reported, LengthUnit unit,
                   std::vector<std::string>* warnings = nullptr);

/// Rows with min_k <= k <= max_k (no upper bound when max_k is unset).
struct KBucket {
  std::string label;
  std::size_t min_k = 0;
  std::optional<std::size_t> max_k;

  bool contains(std::size_t k) const { return k >= min_k && (!max_k || k <= *max_k); }
};

/// Parses "2-10,11-" style lists; every bucket label is its source text.
std::vector<KBucket> parse_buckets(std::string_view list);

struct SummaryRow {
  std::string bucket;
  std::string algorithm;
  std::size_t graphs = 0;
  /// Graphs in the bucket over distinct graphs in all rows.
  Rational share;
  Rational max_relative_coverage;
  Rational weighted_precision;
  Rational f_score;
};

/// Per-bucket, per-algorithm averages. Buckets without rows are omitted;
/// algorithms keep first-appearance order.
std::vector<SummaryRow> summarize(std::span<const MetricRow> rows, std::span<const KBucket> buckets);

/// Fixed-point decimal rendering with round-half-up.
std::string to_fixed(const Rational& value, int digits);
double to_double(const Rational& value);

}  // namespace safeflow
