#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "safeflow/io_formats.hpp"

namespace safeflow {

/// Lognormal draws with underlying-normal parameters (mu, sigma), scaled by
/// 1000 and rounded; draws that round to 0 are dropped, so the result may be
/// shorter than `count`. Throws std::invalid_argument for count 0 or
/// sigma <= 0.
std::vector<Flow> simulate_abundances(std::size_t count, std::uint64_t seed, double mu = -4.0,
                                      double sigma = 2.0);

enum class AppendixKind { kWorst, kBest };

/// Which C x D pairs receive an edge. kBand links c_j to d_j and d_{j+1 mod k}
/// (2k edges); kComplete links every pair (k^2 edges).
enum class CrossDensity { kBand, kComplete };

/// Two chains a_1..a_k and b_1..b_k joined through fan-out C from a_k and
/// fan-in D into b_1. Every C x D edge carries k units.
///
/// kWorst: unit edges a_1 -> a_t (t = 2..k) and b_t -> b_k (t = 1..k-1) leak
/// flow off the chains, so every path from a_i to b_j through one C x D edge
/// has excess i - j + 1 and each C x D edge yields k maximal safe paths.
///
/// kBest: no leaks; (a_{k-1}, a_k) and (b_1, b_2) are each split into two
/// parallel edges of equal flow.
///
/// Vertex ids: a_t = t-1, c_j = k+j-1, d_j = 2k+j-1, b_t = 3k+t-1.
/// Throws std::invalid_argument for k < 2.
GraphRecord gen_appendix_family(AppendixKind kind, std::size_t k,
                                CrossDensity density = CrossDensity::kBand);

enum class WeightMode { kLognormal, kUniform };

struct RandomInstanceOptions {
  std::size_t num_transcripts = 3;
  /// Interior vertices available to transcripts; unused ones are dropped.
  std::size_t vertex_budget = 6;
  std::uint64_t seed = 0;
  WeightMode weights = WeightMode::kLognormal;
  /// Inclusive upper bound for kUniform.
  Flow max_weight = 3;
  double mu = -4.0;
  double sigma = 2.0;
};

/// Transcripts are random increasing subsequences of 1..vertex_budget
/// superimposed between source 0 and sink n-1. Ids are compacted to the
/// vertices actually used. The truth lists transcripts with both terminals.
/// Throws std::invalid_argument for num_transcripts 0 or vertex_budget 0.
GraphRecord gen_random_instance(const RandomInstanceOptions& options);

struct FunnelOptions {
  /// Source-to-sink paths, one per cross edge.
  std::size_t paths = 4;
  std::size_t out_tree_size = 4;
  std::size_t in_tree_size = 4;
  std::uint64_t seed = 0;
  Flow max_weight = 5;
};

/// A random funnel: an out-tree and an in-tree joined by distinct cross
/// edges, framed by a source and a sink. The truth is its unique
/// decomposition. `paths` is capped at out_tree_size * in_tree_size.
GraphRecord gen_funnel(const FunnelOptions& options);

}  // namespace safeflow
