#include "safeflow/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "safeflow/decompose.hpp"
#include "safeflow/enumerate.hpp"
#include "safeflow/flow_graph.hpp"
#include "safeflow/generators.hpp"
#include "safeflow/io_formats.hpp"
#include "safeflow/metrics.hpp"
#include "safeflow/represent.hpp"
#include "safeflow/safety.hpp"

namespace safeflow {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string graph_path;
  std::string truth_path;
  std::string lengths_path;
  std::string out_path;
  std::string format = "json";
  std::string verify_format = "text";
  std::string metrics_format = "csv";
  std::size_t workers = 0;
  bool terminals_auxiliary = false;

  std::string mode = "raw";
  bool no_single_edges = false;
  std::string decomposition = "peel";
  bool with_single_edges = false;
  std::string algo;
  std::string path_text;
  std::string unit = "nodes";
  bool exclude_funnels = false;
  std::string buckets = "2-,2-10,11-";
  std::string summary_path;
  std::string funnels_out;
  std::string others_out;

  std::string family;
  std::vector<std::size_t> ks{4};
  std::size_t count = 1;
  std::optional<std::uint64_t> seed;
  std::size_t transcripts = 3;
  std::size_t vertices = 6;
  double mu = -4.0;
  double sigma = 2.0;
  std::string weights = "lognormal";
  Flow max_weight = 3;
  std::string density = "band";
  std::size_t paths = 4;
  std::size_t out_tree = 4;
  std::size_t in_tree = 4;
  std::string truth_out;
};

struct Outcome {
  std::string text;
  std::vector<std::string> diagnostics;
  std::vector<MetricRow> rows;
  bool failed = false;
  bool funnel = false;
};

std::size_t worker_count(const Config& cfg) {
  std::size_t n = cfg.workers;
  if (n == 0) {
    if (const char* env = std::getenv("SAFEFLOW_WORKERS")) n = std::strtoull(env, nullptr, 10);
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

std::uint64_t seed_of(const Config& cfg) {
  if (cfg.seed) return *cfg.seed;
  if (const char* env = std::getenv("SAFEFLOW_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

// Runs job(i) for i in [0, n) on a bounded pool; results keep input order.
std::vector<Outcome> run_batch(std::size_t n, std::size_t workers,
                               const std::function<Outcome(std::size_t)>& job) {
  std::vector<Outcome> results(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        results[i] = job(i);
      } catch (const std::exception& e) {
        results[i].failed = true;
        results[i].diagnostics.push_back(e.what());
      }
    }
  };
  const std::size_t threads = std::min(workers, n);
  if (threads <= 1) {
    work();
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw Error("cannot write '" + path + "'");
    stream_ = file_.get();
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

template <class Parsed, class Parse>
std::optional<Parsed> read_file(const std::string& path, Parse parse, std::ostream& err) {
  if (path == "-") return parse(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  return parse(in);
}

struct Input {
  std::vector<GraphRecord> records;
  bool failed = false;
};

Input load(const Config& cfg, std::ostream& err) {
  Input input;
  auto graphs = read_file<GraphFile>(cfg.graph_path, parse_graph_file, err);
  if (!graphs) {
    input.failed = true;
    return input;
  }
  for (const ParseIssue& issue : graphs->errors) err << "error: " << cfg.graph_path << ": " << issue.to_string() << '\n';
  input.failed = !graphs->errors.empty();
  input.records = std::move(graphs->records);

  if (!cfg.truth_path.empty()) {
    auto truth = read_file<TruthFile>(cfg.truth_path, parse_truth_file, err);
    if (!truth) {
      input.failed = true;
    } else {
      for (const ParseIssue& issue : truth->errors) err << "error: " << cfg.truth_path << ": " << issue.to_string() << '\n';
      const auto issues = attach_truth(input.records, *truth);
      for (const ParseIssue& issue : issues) err << "error: " << cfg.truth_path << ": " << issue.to_string() << '\n';
      input.failed = input.failed || !truth->errors.empty() || !issues.empty();
    }
  }
  if (!cfg.lengths_path.empty()) {
    auto lengths = read_file<LengthFile>(cfg.lengths_path, parse_node_lengths, err);
    if (!lengths) {
      input.failed = true;
    } else {
      for (const ParseIssue& issue : lengths->errors) err << "error: " << cfg.lengths_path << ": " << issue.to_string() << '\n';
      const auto issues = attach_node_lengths(input.records, *lengths);
      for (const ParseIssue& issue : issues) err << "error: " << cfg.lengths_path << ": " << issue.to_string() << '\n';
      input.failed = input.failed || !lengths->errors.empty() || !issues.empty();
    }
  }
  for (GraphRecord& r : input.records) {
    for (const std::string& w : r.warnings) err << "warning: record '" << r.name << "': " << w << '\n';
    if (!cfg.terminals_auxiliary) continue;
    for (VertexId v = 0; v < r.graph.vertex_count(); ++v) {
      if (r.graph.in_degree(v) == 0 || r.graph.out_degree(v) == 0) r.graph.mark_auxiliary(v);
    }
  }
  return input;
}

FlowAggregates prepare(const GraphRecord& record) {
  const auto violations = validate(record.graph);
  if (!violations.empty()) {
    std::string message = "invalid flow graph:";
    for (const Violation& v : violations) message += " [" + std::string(rule_name(v.rule)) + "] " + v.message + ";";
    message.pop_back();
    throw GraphError(message);
  }
  return aggregates(record.graph);
}

Json vertices_json(const std::vector<VertexId>& vertices) {
  Json j = Json::array();
  for (VertexId v : vertices) j.push_back(v);
  return j;
}

std::string vertices_text(const std::vector<VertexId>& vertices) {
  std::string out;
  for (VertexId v : vertices) out += (out.empty() ? "" : " ") + std::to_string(v);
  return out;
}

struct PathLine {
  std::vector<VertexId> vertices;
  std::int64_t value = 0;
};

// One JSON object or a block of CSV rows per graph.
std::string path_listing(const Config& cfg, const GraphRecord& r, const std::string& algorithm,
                         const char* value_key, const std::vector<PathLine>& paths, Json extra = Json::object()) {
  if (cfg.format == "csv") {
    std::string text;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      text += r.name + ',' + algorithm + ',' + std::to_string(i) + ',' + std::to_string(paths[i].value) + ',' +
              vertices_text(paths[i].vertices) + '\n';
    }
    return text;
  }
  Json j;
  j["name"] = r.name;
  if (r.truth) j["k"] = r.truth->k();
  j["algorithm"] = algorithm;
  for (auto& [key, value] : extra.items()) j[key] = value;
  j["paths"] = Json::array();
  for (const PathLine& p : paths) {
    Json item;
    item["vertices"] = vertices_json(p.vertices);
    item[value_key] = p.value;
    j["paths"].push_back(std::move(item));
  }
  j["count"] = paths.size();
  return j.dump() + '\n';
}

Decomposition decompose_with(const std::string& algo, const GraphRecord& r, const FlowAggregates& agg) {
  return algo == "greedy" ? greedy_width(r.graph, agg) : peel_decomposition(r.graph, agg);
}

std::vector<PathLine> safe_lines(const GraphRecord& r, const FlowAggregates& agg, const std::vector<Path>& paths) {
  std::vector<PathLine> lines;
  for (const Path& p : paths) lines.push_back({path_vertices(r.graph, p), excess_flow(r.graph, agg, p)});
  return lines;
}

Outcome job_safe(const Config& cfg, const GraphRecord& r) {
  const FlowAggregates agg = prepare(r);
  const Decomposition dec = decompose_with(cfg.decomposition, r, agg);
  EnumerateOptions options;
  options.include_single_edges = !cfg.no_single_edges;
  const SafeReport report = safe_report(r.graph, agg, dec, options);
  Json extra;
  extra["mode"] = cfg.mode;
  extra["decomposition"] = cfg.decomposition;

  Outcome o;
  if (cfg.mode == "raw") {
    std::vector<PathLine> lines;
    for (const SafePath& p : report.raw) lines.push_back({path_vertices(r.graph, p.path), p.excess});
    o.text = path_listing(cfg, r, "safe", "excess", lines, extra);
    return o;
  }
  Json j;
  j["name"] = r.name;
  if (r.truth) j["k"] = r.truth->k();
  j["algorithm"] = "safe";
  for (auto& [key, value] : extra.items()) j[key] = value;
  j["carriers"] = Json::array();
  for (const ConciseEntry& e : report.concise) {
    Json c;
    c["vertices"] = vertices_json(path_vertices(r.graph, e.carrier));
    c["host"] = e.host_path_index;
    c["offset"] = e.host_offset;
    c["intervals"] = Json::array();
    for (const Interval& iv : e.intervals) {
      c["intervals"].push_back(Json{{"left", iv.left}, {"right", iv.right}, {"excess", iv.excess}});
    }
    j["carriers"].push_back(std::move(c));
  }
  j["count"] = report.concise.size();
  j["raw_count"] = report.raw.size();
  o.text = j.dump() + '\n';
  return o;
}

Outcome job_unitigs(const Config& cfg, const GraphRecord& r, bool extended) {
  const FlowAggregates agg = prepare(r);
  const auto paths = extended ? remove_contained(extended_unitigs(r.graph)) : unitigs(r.graph, cfg.with_single_edges);
  Outcome o;
  o.text = path_listing(cfg, r, extended ? "ext-unitigs" : "unitigs", "excess", safe_lines(r, agg, paths));
  return o;
}

Outcome job_decompose(const Config& cfg, const GraphRecord& r) {
  const FlowAggregates agg = prepare(r);
  const Decomposition dec = decompose_with(cfg.algo, r, agg);
  std::vector<PathLine> lines;
  for (const WeightedPath& p : dec.paths) {
    lines.push_back({path_vertices(r.graph, p.path), static_cast<std::int64_t>(p.weight)});
  }
  Outcome o;
  o.text = path_listing(cfg, r, cfg.algo, "weight", lines);
  return o;
}

std::vector<VertexId> parse_vertex_list(const std::string& text) {
  std::vector<VertexId> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v > std::numeric_limits<VertexId>::max()) throw std::invalid_argument(item);
      out.push_back(static_cast<VertexId>(v));
    } catch (const std::logic_error&) {
      throw UsageError("invalid vertex '" + item + "' in --path");
    }
  }
  if (out.size() < 2) throw UsageError("--path needs at least two vertices");
  return out;
}

Outcome job_verify(const Config& cfg, const GraphRecord& r, const std::vector<VertexId>& vertices, bool prefix) {
  const FlowAggregates agg = prepare(r);
  const Path path = path_from_vertices(r.graph, vertices);
  const Verification v = verify_path(r.graph, agg, path.edges);
  Outcome o;
  if (cfg.verify_format == "json") {
    Json j;
    j["name"] = r.name;
    j["path"] = vertices_json(vertices);
    j["safe"] = v.safe;
    j["excess"] = v.weight;
    o.text = j.dump() + '\n';
  } else {
    o.text = (prefix ? r.name + ": " : "") + (v.safe ? "safe" : "unsafe") + ", excess " + std::to_string(v.weight) + '\n';
  }
  return o;
}

std::vector<VertexPath> as_vertex_paths(const FlowGraph& g, const std::vector<Path>& paths) {
  std::vector<VertexPath> out;
  for (const Path& p : paths) out.push_back(path_vertices(g, p));
  return out;
}

std::vector<VertexPath> produce(const std::string& algo, const Config& cfg, const GraphRecord& r,
                                const FlowAggregates& agg) {
  if (algo == "unitigs") return as_vertex_paths(r.graph, unitigs(r.graph, cfg.with_single_edges));
  if (algo == "ext-unitigs") return as_vertex_paths(r.graph, remove_contained(extended_unitigs(r.graph)));
  if (algo == "safe") {
    EnumerateOptions options;
    options.include_single_edges = !cfg.no_single_edges;
    const SafeReport report = safe_report(r.graph, agg, decompose_with(cfg.decomposition, r, agg), options);
    std::vector<VertexPath> out;
    for (const SafePath& p : report.raw) out.push_back(path_vertices(r.graph, p.path));
    return out;
  }
  std::vector<VertexPath> out;
  for (const WeightedPath& p : decompose_with(algo, r, agg).paths) out.push_back(path_vertices(r.graph, p.path));
  return out;
}

std::string metric_csv(const MetricRow& row) {
  return row.graph_id + ',' + std::to_string(row.k) + ',' + row.algorithm + ',' + std::string(unit_name(row.unit)) + ',' +
         to_fixed(row.max_relative_coverage, 6) + ',' + to_fixed(row.weighted_precision, 6) + ',' +
         to_fixed(row.f_score, 6) + '\n';
}

Json metric_json(const MetricRow& row) {
  Json j;
  j["graph_id"] = row.graph_id;
  j["k"] = row.k;
  j["algorithm"] = row.algorithm;
  j["unit"] = unit_name(row.unit);
  j["coverage"] = std::stod(to_fixed(row.max_relative_coverage, 6));
  j["precision"] = std::stod(to_fixed(row.weighted_precision, 6));
  j["fscore"] = std::stod(to_fixed(row.f_score, 6));
  return j;
}

Outcome job_metrics(const Config& cfg, const GraphRecord& r, const std::vector<std::string>& algos) {
  Outcome o;
  if (!r.truth || r.truth->k() == 0) {
    o.diagnostics.push_back("warning: record '" + r.name + "': no ground truth, excluded from metrics");
    return o;
  }
  const FlowAggregates agg = prepare(r);
  if (cfg.exclude_funnels && is_funnel(r.graph)) return o;
  const LengthUnit unit = cfg.unit == "bases" ? LengthUnit::kBases : LengthUnit::kNodes;
  std::vector<std::string> warnings;
  for (const std::string& algo : algos) {
    const auto reported = produce(algo, cfg, r, agg);
    MetricRow row = evaluate(r.name, r.graph, *r.truth, algo, reported, unit, algo == algos.front() ? &warnings : nullptr);
    o.text += cfg.metrics_format == "csv" ? metric_csv(row) : metric_json(row).dump() + '\n';
    o.rows.push_back(std::move(row));
  }
  for (const std::string& w : warnings) o.diagnostics.push_back("warning: " + w);
  return o;
}

void add_common(CLI::App* sub, Config& cfg, bool graph_required = true) {
  auto* g = sub->add_option("-g,--graph", cfg.graph_path, "Graph file ('-' for stdin)");
  if (graph_required) g->required();
  sub->add_option("-t,--truth", cfg.truth_path, "Ground-truth transcript file");
  sub->add_option("-l,--lengths", cfg.lengths_path, "Node length file");
  sub->add_option("-o,--out", cfg.out_path, "Output file (default stdout)");
  sub->add_option("--workers", cfg.workers, "Worker threads (env SAFEFLOW_WORKERS)");
  sub->add_flag("--terminals-auxiliary", cfg.terminals_auxiliary,
                "Treat sources and sinks as auxiliary vertices of length 0");
}

void add_format(CLI::App* sub, std::string& target, std::vector<std::string> formats) {
  sub->add_option("--format", target, "Output format")->check(CLI::IsMember(std::move(formats)));
}

int finish(const std::vector<Outcome>& results, bool failed, std::ostream& out, std::ostream& err,
           const std::vector<GraphRecord>& records) {
  for (std::size_t i = 0; i < results.size(); ++i) {
    out << results[i].text;
    for (const std::string& d : results[i].diagnostics) {
      if (results[i].failed) {
        err << "error: record '" << records[i].name << "': " << d << '\n';
      } else {
        err << d << '\n';
      }
    }
    failed = failed || results[i].failed;
  }
  return failed ? 1 : 0;
}

int run_records(const Config& cfg, std::ostream& out, std::ostream& err, const std::string& header,
                const std::function<Outcome(const GraphRecord&)>& job) {
  Input input = load(cfg, err);
  Output sink(cfg.out_path, out);
  const auto results =
      run_batch(input.records.size(), worker_count(cfg), [&](std::size_t i) { return job(input.records[i]); });
  if (!header.empty()) *sink << header;
  return finish(results, input.failed, *sink, err, input.records);
}

int cmd_metrics(const Config& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.truth_path.empty()) throw UsageError("metrics requires --truth");
  if (cfg.unit == "bases" && cfg.lengths_path.empty()) throw UsageError("--unit bases requires --lengths");
  std::vector<std::string> algos;
  std::stringstream ss(cfg.algo);
  std::string item;
  const std::vector<std::string> known{"unitigs", "ext-unitigs", "safe", "greedy", "peel"};
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      for (const char* a : {"unitigs", "ext-unitigs", "safe", "greedy"}) algos.emplace_back(a);
    } else if (std::find(known.begin(), known.end(), item) != known.end()) {
      algos.push_back(item);
    } else {
      throw UsageError("unknown algorithm '" + item + "'");
    }
  }
  if (algos.empty()) throw UsageError("--algo needs at least one algorithm");
  const auto buckets = parse_buckets(cfg.buckets);

  Input input = load(cfg, err);
  Output sink(cfg.out_path, out);
  const auto results = run_batch(input.records.size(), worker_count(cfg),
                                 [&](std::size_t i) { return job_metrics(cfg, input.records[i], algos); });
  if (cfg.metrics_format == "csv") *sink << "graph_id,k,algorithm,unit,coverage,precision,fscore\n";
  const int status = finish(results, input.failed, *sink, err, input.records);

  if (!cfg.summary_path.empty()) {
    std::vector<MetricRow> rows;
    for (const Outcome& o : results) rows.insert(rows.end(), o.rows.begin(), o.rows.end());
    Output summary(cfg.summary_path, out);
    *summary << "bucket,algorithm,graphs,share,coverage,precision,fscore\n";
    for (const SummaryRow& s : summarize(rows, buckets)) {
      *summary << s.bucket << ',' << s.algorithm << ',' << s.graphs << ',' << to_fixed(s.share, 6) << ','
               << to_fixed(s.max_relative_coverage, 6) << ',' << to_fixed(s.weighted_precision, 6) << ','
               << to_fixed(s.f_score, 6) << '\n';
    }
  }
  return status;
}

int cmd_filter_funnels(const Config& cfg, std::ostream& out, std::ostream& err) {
  Input input = load(cfg, err);
  const auto results = run_batch(input.records.size(), worker_count(cfg), [&](std::size_t i) {
    prepare(input.records[i]);
    Outcome o;
    o.funnel = is_funnel(input.records[i].graph);
    return o;
  });
  std::unique_ptr<Output> funnels;
  std::unique_ptr<Output> others;
  if (!cfg.funnels_out.empty()) funnels = std::make_unique<Output>(cfg.funnels_out, out);
  if (!cfg.others_out.empty()) others = std::make_unique<Output>(cfg.others_out, out);

  struct Tally {
    std::size_t graphs = 0;
    std::size_t funnels = 0;
  };
  std::map<std::size_t, Tally> by_k;
  Tally all;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].failed) continue;
    const GraphRecord& r = input.records[i];
    auto* target = results[i].funnel ? funnels.get() : others.get();
    if (target) emit_graph_record(**target, r);
    ++all.graphs;
    all.funnels += results[i].funnel ? 1 : 0;
    if (r.truth && r.truth->k() > 0) {
      Tally& t = by_k[r.truth->k()];
      ++t.graphs;
      t.funnels += results[i].funnel ? 1 : 0;
    }
  }
  Output sink(cfg.out_path, out);
  auto row = [&](const std::string& label, const Tally& t) {
    const Rational share = t.graphs == 0 ? Rational(0) : Rational(t.funnels) / t.graphs;
    *sink << label << ',' << t.graphs << ',' << t.funnels << ',' << (t.graphs - t.funnels) << ','
          << to_fixed(share, 6) << '\n';
  };
  *sink << "k,graphs,funnels,non_funnels,funnel_share\n";
  for (const auto& [k, t] : by_k) row(std::to_string(k), t);
  row("all", all);
  std::vector<Outcome> diagnostics_only = results;
  for (Outcome& o : diagnostics_only) o.text.clear();
  std::ostringstream discard;
  return finish(diagnostics_only, input.failed, discard, err, input.records);
}

int cmd_generate(const Config& cfg, std::ostream& out) {
  std::vector<GraphRecord> records;
  const std::uint64_t seed = seed_of(cfg);
  if (cfg.family == "appendix-worst" || cfg.family == "appendix-best") {
    const AppendixKind kind = cfg.family == "appendix-worst" ? AppendixKind::kWorst : AppendixKind::kBest;
    const CrossDensity density = cfg.density == "complete" ? CrossDensity::kComplete : CrossDensity::kBand;
    for (std::size_t k : cfg.ks) {
      if (k < 2) throw UsageError("appendix families need -k >= 2");
      records.push_back(gen_appendix_family(kind, k, density));
    }
  } else {
    for (std::size_t i = 0; i < cfg.count; ++i) {
      if (cfg.family == "random") {
        RandomInstanceOptions o;
        o.num_transcripts = cfg.transcripts;
        o.vertex_budget = cfg.vertices;
        o.seed = seed + i;
        o.weights = cfg.weights == "uniform" ? WeightMode::kUniform : WeightMode::kLognormal;
        o.max_weight = cfg.max_weight;
        o.mu = cfg.mu;
        o.sigma = cfg.sigma;
        records.push_back(gen_random_instance(o));
      } else {
        FunnelOptions o;
        o.paths = cfg.paths;
        o.out_tree_size = cfg.out_tree;
        o.in_tree_size = cfg.in_tree;
        o.seed = seed + i;
        o.max_weight = cfg.max_weight;
        records.push_back(gen_funnel(o));
      }
    }
  }
  {
    Output sink(cfg.out_path, out);
    emit_graph_file(*sink, records);
  }
  if (!cfg.truth_out.empty()) {
    Output truth(cfg.truth_out, out);
    emit_truth_file(*truth, records);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Safe paths of flow decompositions in DAGs", "safeflow"};
  app.require_subcommand(1);

  auto* safe = app.add_subcommand("safe", "Maximal safe paths via a candidate decomposition");
  add_common(safe, cfg);
  add_format(safe, cfg.format, {"json", "csv"});
  safe->add_option("--mode", cfg.mode, "raw or concise")->check(CLI::IsMember({"raw", "concise"}));
  safe->add_flag("--no-single-edges", cfg.no_single_edges, "Drop single-edge maximal safe paths");
  safe->add_option("--decomposition", cfg.decomposition, "Candidate decomposition")
      ->check(CLI::IsMember({"peel", "greedy"}));

  auto* uni = app.add_subcommand("unitigs", "Unitigs");
  add_common(uni, cfg);
  add_format(uni, cfg.format, {"json", "csv"});
  uni->add_flag("--with-single-edges", cfg.with_single_edges, "Keep single-edge unitigs");

  auto* ext = app.add_subcommand("ext-unitigs", "Extended unitigs");
  add_common(ext, cfg);
  add_format(ext, cfg.format, {"json", "csv"});

  auto* dec = app.add_subcommand("decompose", "Flow decomposition");
  add_common(dec, cfg);
  add_format(dec, cfg.format, {"json", "csv"});
  dec->add_option("--algo", cfg.algo, "peel or greedy")->required()->check(CLI::IsMember({"peel", "greedy"}));

  auto* ver = app.add_subcommand("verify", "Safety and excess of one path");
  add_common(ver, cfg);
  add_format(ver, cfg.verify_format, {"text", "json"});
  ver->add_option("--path", cfg.path_text, "Comma-separated vertex ids")->required();

  auto* met = app.add_subcommand("metrics", "Coverage, precision and F-score against a ground truth");
  add_common(met, cfg);
  add_format(met, cfg.metrics_format, {"csv", "json"});
  met->add_option("--algo", cfg.algo, "unitigs, ext-unitigs, safe, greedy, peel or all (comma-separated)")
      ->default_val("all");
  met->add_option("--unit", cfg.unit, "bases or nodes")->check(CLI::IsMember({"bases", "nodes"}));
  met->add_flag("--exclude-funnels", cfg.exclude_funnels, "Skip funnel graphs");
  met->add_option("--buckets", cfg.buckets, "k buckets for the summary, e.g. 2-10,11-");
  met->add_option("--summary", cfg.summary_path, "Write the per-bucket summary CSV here");
  met->add_flag("--no-single-edges", cfg.no_single_edges, "Drop single-edge maximal safe paths");
  met->add_flag("--with-single-edges", cfg.with_single_edges, "Keep single-edge unitigs");
  met->add_option("--decomposition", cfg.decomposition, "Candidate decomposition for safe")
      ->check(CLI::IsMember({"peel", "greedy"}));

  auto* fil = app.add_subcommand("filter-funnels", "Split records into funnels and others");
  add_common(fil, cfg);
  fil->add_option("--funnels-out", cfg.funnels_out, "Graph file for funnel records");
  fil->add_option("--others-out", cfg.others_out, "Graph file for non-funnel records");

  auto* gen = app.add_subcommand("generate", "Synthetic instances");
  gen->add_option("--family", cfg.family, "Instance family")
      ->required()
      ->check(CLI::IsMember({"appendix-worst", "appendix-best", "random", "funnel"}));
  gen->add_option("-k", cfg.ks, "Appendix family sizes");
  gen->add_option("--density", cfg.density, "C x D edges: band or complete")
      ->check(CLI::IsMember({"band", "complete"}));
  gen->add_option("--count", cfg.count, "Records for random families");
  gen->add_option("--seed", cfg.seed, "Base seed (env SAFEFLOW_SEED)");
  gen->add_option("--transcripts", cfg.transcripts, "Transcripts per random instance");
  gen->add_option("--vertices", cfg.vertices, "Vertex budget per random instance");
  gen->add_option("--weights", cfg.weights, "lognormal or uniform")->check(CLI::IsMember({"lognormal", "uniform"}));
  gen->add_option("--max-weight", cfg.max_weight, "Upper bound for uniform and funnel weights");
  gen->add_option("--mu", cfg.mu, "Lognormal mu");
  gen->add_option("--sigma", cfg.sigma, "Lognormal sigma");
  gen->add_option("--paths", cfg.paths, "Paths per funnel");
  gen->add_option("--out-tree", cfg.out_tree, "Out-tree size per funnel");
  gen->add_option("--in-tree", cfg.in_tree, "In-tree size per funnel");
  gen->add_option("-o,--out", cfg.out_path, "Graph output (default stdout)");
  gen->add_option("--truth-out", cfg.truth_out, "Truth output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (safe->parsed()) {
      if (cfg.mode == "concise" && cfg.format == "csv") throw UsageError("concise mode supports json only");
      return run_records(cfg, out, err, cfg.format == "csv" ? "graph_id,algorithm,index,excess,vertices\n" : "",
                         [&](const GraphRecord& r) { return job_safe(cfg, r); });
    }
    if (uni->parsed() || ext->parsed()) {
      const bool extended = ext->parsed();
      return run_records(cfg, out, err, cfg.format == "csv" ? "graph_id,algorithm,index,excess,vertices\n" : "",
                         [&](const GraphRecord& r) { return job_unitigs(cfg, r, extended); });
    }
    if (dec->parsed()) {
      return run_records(cfg, out, err, cfg.format == "csv" ? "graph_id,algorithm,index,weight,vertices\n" : "",
                         [&](const GraphRecord& r) { return job_decompose(cfg, r); });
    }
    if (ver->parsed()) {
      const auto vertices = parse_vertex_list(cfg.path_text);
      Input probe = load(cfg, err);
      const bool prefix = probe.records.size() > 1;
      Output sink(cfg.out_path, out);
      const auto results = run_batch(probe.records.size(), worker_count(cfg), [&](std::size_t i) {
        return job_verify(cfg, probe.records[i], vertices, prefix);
      });
      return finish(results, probe.failed, *sink, err, probe.records);
    }
    if (met->parsed()) return cmd_metrics(cfg, out, err);
    if (fil->parsed()) return cmd_filter_funnels(cfg, out, err);
    if (gen->parsed()) return cmd_generate(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace safeflow
