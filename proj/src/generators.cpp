#include "safeflow/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace safeflow {

namespace {

// Relabels the used interior vertices to 1..U in ascending order, frames the
// graph with source 0 and sink U+1 and attaches the framed transcripts as
// truth.
GraphRecord frame_transcripts(std::string name, const std::vector<std::vector<VertexId>>& interiors,
                              const std::vector<Flow>& weights) {
  std::set<VertexId> used;
  for (const auto& seq : interiors) used.insert(seq.begin(), seq.end());
  std::vector<VertexId> ids(used.begin(), used.end());
  auto relabel = [&](VertexId v) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), v) - ids.begin() + 1);
  };
  const auto sink = static_cast<VertexId>(ids.size() + 1);

  std::vector<Transcript> interior_transcripts;
  GroundTruth truth;
  for (std::size_t i = 0; i < interiors.size(); ++i) {
    Transcript t;
    t.weight = weights[i];
    for (VertexId v : interiors[i]) t.vertices.push_back(relabel(v));
    interior_transcripts.push_back(t);
    t.vertices.insert(t.vertices.begin(), 0);
    t.vertices.push_back(sink);
    truth.transcripts.push_back(std::move(t));
  }

  GraphRecord record;
  record.name = std::move(name);
  record.graph = superimpose(interior_transcripts, ids.size() + 2, {{{0, sink}}});
  record.graph.set_name(record.name);
  record.truth = std::move(truth);
  return record;
}

}  // namespace

std::vector<Flow> simulate_abundances(std::size_t count, std::uint64_t seed, double mu, double sigma) {
  if (count == 0) throw std::invalid_argument("abundance count must be at least 1");
  if (!(sigma > 0)) throw std::invalid_argument("lognormal sigma must be positive");
  std::mt19937_64 rng(seed);
  std::lognormal_distribution<double> dist(mu, sigma);
  std::vector<Flow> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double scaled = dist(rng) * 1000.0;
    if (!(scaled < 9.0e18)) throw std::overflow_error("abundance sample exceeds the flow range");
    const auto rounded = static_cast<Flow>(std::llround(scaled));
    if (rounded > 0) out.push_back(rounded);
  }
  return out;
}

GraphRecord gen_appendix_family(AppendixKind kind, std::size_t k, CrossDensity density) {
  if (k < 2) throw std::invalid_argument("appendix family requires k >= 2");
  const auto K = static_cast<VertexId>(k);
  auto a = [&](std::size_t t) { return static_cast<VertexId>(t - 1); };
  auto c = [&](std::size_t j) { return static_cast<VertexId>(K + j - 1); };
  auto d = [&](std::size_t j) { return static_cast<VertexId>(2 * K + j - 1); };
  auto b = [&](std::size_t t) { return static_cast<VertexId>(3 * K + t - 1); };

  std::vector<std::pair<std::size_t, std::size_t>> cross;
  if (density == CrossDensity::kBand) {
    for (std::size_t j = 1; j <= k; ++j) {
      cross.emplace_back(j, j);
      cross.emplace_back(j, j % k + 1);
    }
  } else {
    for (std::size_t j = 1; j <= k; ++j) {
      for (std::size_t l = 1; l <= k; ++l) cross.emplace_back(j, l);
    }
  }
  const Flow unit = k;
  // An equal split needs an even chain flow; dropping one cross edge of a
  // complete odd-k instance restores parity.
  if (kind == AppendixKind::kBest && (unit * cross.size()) % 2 != 0) cross.pop_back();
  const Flow total = unit * cross.size();

  std::vector<Flow> c_out(k + 1, 0);
  std::vector<Flow> d_in(k + 1, 0);
  for (const auto& [j, l] : cross) {
    c_out[j] += unit;
    d_in[l] += unit;
  }

  std::vector<Edge> edges;
  if (kind == AppendixKind::kWorst) {
    for (std::size_t t = 1; t < k; ++t) edges.push_back({a(t), a(t + 1), total - k + t});
    for (std::size_t t = 2; t <= k; ++t) edges.push_back({a(1), a(t), 1});
  } else {
    for (std::size_t t = 1; t + 1 < k; ++t) edges.push_back({a(t), a(t + 1), total});
    edges.push_back({a(k - 1), a(k), total / 2});
    edges.push_back({a(k - 1), a(k), total / 2});
  }
  for (std::size_t j = 1; j <= k; ++j) {
    if (c_out[j] > 0) edges.push_back({a(k), c(j), c_out[j]});
  }
  for (const auto& [j, l] : cross) edges.push_back({c(j), d(l), unit});
  for (std::size_t l = 1; l <= k; ++l) {
    if (d_in[l] > 0) edges.push_back({d(l), b(1), d_in[l]});
  }
  if (kind == AppendixKind::kWorst) {
    for (std::size_t t = 1; t < k; ++t) edges.push_back({b(t), b(t + 1), total - t});
    for (std::size_t t = 1; t < k; ++t) edges.push_back({b(t), b(k), 1});
  } else {
    edges.push_back({b(1), b(2), total / 2});
    edges.push_back({b(1), b(2), total / 2});
    for (std::size_t t = 2; t < k; ++t) edges.push_back({b(t), b(t + 1), total});
  }

  GraphRecord record;
  record.name = std::string(kind == AppendixKind::kWorst ? "appendix-worst" : "appendix-best") + "-k" +
                std::to_string(k);
  record.graph = FlowGraph(4 * k, std::move(edges), record.name);
  return record;
}

GraphRecord gen_random_instance(const RandomInstanceOptions& options) {
  if (options.num_transcripts == 0) throw std::invalid_argument("num_transcripts must be at least 1");
  if (options.vertex_budget == 0) throw std::invalid_argument("vertex_budget must be at least 1");
  std::mt19937_64 rng(options.seed);

  std::vector<Flow> weights;
  if (options.weights == WeightMode::kUniform) {
    if (options.max_weight == 0) throw std::invalid_argument("max_weight must be at least 1");
    std::uniform_int_distribution<Flow> dist(1, options.max_weight);
    for (std::size_t i = 0; i < options.num_transcripts; ++i) weights.push_back(dist(rng));
  } else {
    std::uint64_t salt = rng();
    while (weights.empty()) {
      weights = simulate_abundances(options.num_transcripts, salt++, options.mu, options.sigma);
    }
  }

  std::vector<std::vector<VertexId>> interiors;
  std::bernoulli_distribution keep(0.5);
  std::uniform_int_distribution<VertexId> any(1, static_cast<VertexId>(options.vertex_budget));
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::vector<VertexId> seq;
    for (VertexId v = 1; v <= options.vertex_budget; ++v) {
      if (keep(rng)) seq.push_back(v);
    }
    if (seq.empty()) seq.push_back(any(rng));
    interiors.push_back(std::move(seq));
  }
  return frame_transcripts("random-" + std::to_string(options.seed), interiors, weights);
}

GraphRecord gen_funnel(const FunnelOptions& options) {
  if (options.out_tree_size == 0 || options.in_tree_size == 0 || options.paths == 0) {
    throw std::invalid_argument("funnel sizes must be at least 1");
  }
  if (options.max_weight == 0) throw std::invalid_argument("max_weight must be at least 1");
  std::mt19937_64 rng(options.seed);
  const std::size_t O = options.out_tree_size;
  const std::size_t I = options.in_tree_size;

  // Out-tree nodes 0..O-1 rooted at 0; in-tree nodes O..O+I-1 rooted at O.
  std::vector<VertexId> out_parent(O, 0);
  std::vector<VertexId> in_parent(I, 0);
  for (std::size_t i = 1; i < O; ++i) {
    out_parent[i] = std::uniform_int_distribution<VertexId>(0, static_cast<VertexId>(i - 1))(rng);
  }
  for (std::size_t i = 1; i < I; ++i) {
    in_parent[i] = std::uniform_int_distribution<VertexId>(0, static_cast<VertexId>(i - 1))(rng);
  }

  std::vector<std::pair<VertexId, VertexId>> pairs;
  for (VertexId x = 0; x < O; ++x) {
    for (VertexId y = 0; y < I; ++y) pairs.emplace_back(x, y);
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(std::min(options.paths, pairs.size()));

  std::uniform_int_distribution<Flow> weight(1, options.max_weight);
  std::vector<std::vector<VertexId>> interiors;
  std::vector<Flow> weights;
  for (const auto& [x, y] : pairs) {
    std::vector<VertexId> seq;
    for (VertexId v = x;; v = out_parent[v]) {
      seq.push_back(v + 1);
      if (v == 0) break;
    }
    std::reverse(seq.begin(), seq.end());
    for (VertexId v = y;; v = in_parent[v]) {
      seq.push_back(static_cast<VertexId>(O + v + 1));
      if (v == 0) break;
    }
    interiors.push_back(std::move(seq));
    weights.push_back(weight(rng));
  }
  return frame_transcripts("funnel-" + std::to_string(options.seed), interiors, weights);
}

}  // namespace safeflow
