#include "safeflow/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <unordered_map>

namespace safeflow {

using boost::multiprecision::cpp_int;

std::string_view unit_name(LengthUnit unit) {
  return unit == LengthUnit::kBases ? "bases" : "nodes";
}

std::uint64_t path_length(std::span<const VertexId> path, const FlowGraph& graph, LengthUnit unit) {
  const auto& lengths = graph.node_lengths();
  if (unit == LengthUnit::kBases && !lengths) {
    throw Error("graph '" + graph.name() + "' has no node lengths; bases unit unavailable");
  }
  std::uint64_t total = 0;
  for (VertexId v : path) {
    if (graph.is_auxiliary(v)) continue;
    total += unit == LengthUnit::kBases ? lengths->at(v) : 1;
  }
  return total;
}

bool is_vertex_subpath(std::span<const VertexId> inner, std::span<const VertexId> outer) {
  if (inner.empty()) return true;
  return std::search(outer.begin(), outer.end(), inner.begin(), inner.end()) != outer.end();
}

Rational weighted_precision(std::span<const VertexPath> reported, const GroundTruth& truth,
                            const FlowGraph& graph, LengthUnit unit) {
  cpp_int correct = 0;
  cpp_int total = 0;
  for (const VertexPath& r : reported) {
    const std::uint64_t len = path_length(r, graph, unit);
    total += len;
    const bool ok = std::any_of(truth.transcripts.begin(), truth.transcripts.end(),
                                [&](const Transcript& t) { return is_vertex_subpath(r, t.vertices); });
    if (ok) correct += len;
  }
  if (total == 0) return Rational(1);
  return Rational(correct, total);
}

Rational max_relative_coverage(std::span<const VertexPath> reported, const GroundTruth& truth,
                               const FlowGraph& graph, LengthUnit unit,
                               std::vector<std::string>* warnings) {
  Rational sum = 0;
  std::size_t counted = 0;
  for (std::size_t t = 0; t < truth.transcripts.size(); ++t) {
    const auto& tv = truth.transcripts[t].vertices;
    const std::uint64_t t_len = path_length(tv, graph, unit);
    if (t_len == 0) {
      if (warnings) {
        warnings->push_back("graph '" + graph.name() + "': transcript " + std::to_string(t) +
                            " has length 0 and is excluded from coverage");
      }
      continue;
    }
    std::unordered_map<VertexId, std::size_t> position;
    for (std::size_t i = 0; i < tv.size(); ++i) position.emplace(tv[i], i);

    std::uint64_t best = 0;
    for (const VertexPath& r : reported) {
      std::size_t i = 0;
      while (i < r.size()) {
        auto it = position.find(r[i]);
        if (it == position.end()) {
          ++i;
          continue;
        }
        std::size_t j = i + 1;
        std::size_t at = it->second;
        while (j < r.size() && at + 1 < tv.size() && tv[at + 1] == r[j]) {
          ++j;
          ++at;
        }
        best = std::max(best, path_length(std::span<const VertexId>(r).subspan(i, j - i), graph, unit));
        i = j;
      }
    }
    sum += Rational(cpp_int(best), cpp_int(t_len));
    ++counted;
  }
  if (counted == 0) return Rational(0);
  return sum / counted;
}

Rational f_score(const Rational& coverage, const Rational& precision) {
  const Rational denom = coverage + precision;
  if (denom == 0) return Rational(0);
  return 2 * coverage * precision / denom;
}

MetricRow evaluate(std::string graph_id, const FlowGraph& graph, const GroundTruth& truth,
                   std::string algorithm, std::span<const VertexPath> reported, LengthUnit unit,
                   std::vector<std::string>* warnings) {
  MetricRow row;
  row.graph_id = std::move(graph_id);
  row.k = truth.k();
  row.algorithm = std::move(algorithm);
  row.unit = unit;
  row.max_relative_coverage = max_relative_coverage(reported, truth, graph, unit, warnings);
  row.weighted_precision = weighted_precision(reported, truth, graph, unit);
  row.f_score = f_score(row.max_relative_coverage, row.weighted_precision);
  return row;
}

std::vector<KBucket> parse_buckets(std::string_view list) {
  std::vector<KBucket> buckets;
  const std::string whole(list);
  auto number = [&](std::string_view text) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
      throw Error("invalid k bucket '" + whole + "'");
    }
    return value;
  };
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
    KBucket b;
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      b.min_k = number(item);
      b.max_k = b.min_k;
      b.label = "k=" + std::to_string(b.min_k);
    } else {
      b.min_k = number(item.substr(0, dash));
      const auto upper = item.substr(dash + 1);
      if (upper.empty()) {
        b.label = "k>=" + std::to_string(b.min_k);
      } else {
        b.max_k = number(upper);
        if (*b.max_k < b.min_k) throw Error("empty k bucket '" + std::string(item) + "'");
        b.label = std::to_string(b.min_k) + "<=k<=" + std::to_string(*b.max_k);
      }
    }
    buckets.push_back(std::move(b));
  }
  return buckets;
}

std::vector<SummaryRow> summarize(std::span<const MetricRow> rows, std::span<const KBucket> buckets) {
  std::map<std::string, std::size_t> k_of_graph;
  std::vector<std::string> algorithms;
  for (const MetricRow& r : rows) {
    k_of_graph.emplace(r.graph_id, r.k);
    if (std::find(algorithms.begin(), algorithms.end(), r.algorithm) == algorithms.end()) {
      algorithms.push_back(r.algorithm);
    }
  }

  std::vector<SummaryRow> summary;
  for (const KBucket& bucket : buckets) {
    std::size_t population = 0;
    for (const auto& [id, k] : k_of_graph) population += bucket.contains(k) ? 1 : 0;
    if (population == 0) continue;
    for (const std::string& algo : algorithms) {
      SummaryRow s;
      s.bucket = bucket.label;
      s.algorithm = algo;
      s.share = Rational(cpp_int(population), cpp_int(k_of_graph.size()));
      for (const MetricRow& r : rows) {
        if (r.algorithm != algo || !bucket.contains(r.k)) continue;
        ++s.graphs;
        s.max_relative_coverage += r.max_relative_coverage;
        s.weighted_precision += r.weighted_precision;
        s.f_score += r.f_score;
      }
      if (s.graphs == 0) continue;
      s.max_relative_coverage /= s.graphs;
      s.weighted_precision /= s.graphs;
      s.f_score /= s.graphs;
      summary.push_back(std::move(s));
    }
  }
  return summary;
}

std::string to_fixed(const Rational& value, int digits) {
  cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  const bool negative = num < 0;
  if (negative) num = -num;
  cpp_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  const cpp_int scaled = (num * scale * 2 + den) / (den * 2);
  const cpp_int whole = scaled / scale;
  std::string out = (negative && scaled != 0 ? "-" : "") + whole.str();
  if (digits > 0) {
    std::string frac = cpp_int(scaled % scale).str();
    out += '.' + std::string(static_cast<std::size_t>(digits) - frac.size(), '0') + frac;
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace safeflow
