#include "safeflow/io_formats.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string_view>

namespace safeflow {

namespace {

struct Line {
  std::size_t number = 0;
  std::string text;
};

struct Section {
  std::string name;
  std::size_t header_line = 0;
  std::vector<Line> body;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<Section> split_sections(std::istream& in, std::vector<ParseIssue>& errors) {
  std::vector<Section> sections;
  std::string raw;
  std::size_t number = 0;
  bool reported_orphan = false;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string_view text = trim(raw);
    if (text.empty()) continue;
    if (text.front() == '#') {
      sections.push_back({std::string(trim(text.substr(1))), number, {}});
      continue;
    }
    if (sections.empty()) {
      if (!reported_orphan) errors.push_back({number, "", "data before the first record header"});
      reported_orphan = true;
      continue;
    }
    sections.back().body.push_back({number, std::string(text)});
  }
  return sections;
}

std::vector<std::string_view> tokens(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

std::int64_t integer(std::string_view token, const Section& s, const Line& line, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError({line.number, s.name, std::string("malformed ") + what + " '" + std::string(token) + "'"});
  }
  return value;
}

VertexId vertex(std::string_view token, std::size_t n, const Section& s, const Line& line) {
  const std::int64_t v = integer(token, s, line, "vertex id");
  if (v < 0 || static_cast<std::uint64_t>(v) >= n) {
    throw ParseError({line.number, s.name,
                      "vertex id " + std::string(token) + " out of range (n = " + std::to_string(n) + ")"});
  }
  return static_cast<VertexId>(v);
}

GraphRecord parse_graph_section(const Section& s) {
  if (s.body.empty()) throw ParseError({s.header_line, s.name, "missing vertex count"});
  const Line& count_line = s.body.front();
  const auto count_tokens = tokens(count_line.text);
  if (count_tokens.size() != 1) throw ParseError({count_line.number, s.name, "expected a vertex count"});
  const std::int64_t n = integer(count_tokens[0], s, count_line, "vertex count");
  if (n < 0 || n > static_cast<std::int64_t>(std::numeric_limits<VertexId>::max())) {
    throw ParseError({count_line.number, s.name, "vertex count out of range"});
  }

  std::vector<Edge> edges;
  edges.reserve(s.body.size() - 1);
  for (std::size_t i = 1; i < s.body.size(); ++i) {
    const Line& line = s.body[i];
    const auto t = tokens(line.text);
    if (t.size() != 3) throw ParseError({line.number, s.name, "expected 'tail head weight'"});
    const VertexId tail = vertex(t[0], static_cast<std::size_t>(n), s, line);
    const VertexId head = vertex(t[1], static_cast<std::size_t>(n), s, line);
    const std::int64_t w = integer(t[2], s, line, "weight");
    if (w <= 0) throw ParseError({line.number, s.name, "nonpositive weight"});
    if (tail == head) throw ParseError({line.number, s.name, "self-loop"});
    edges.push_back({tail, head, static_cast<Flow>(w)});
  }
  GraphRecord record;
  record.name = s.name;
  record.graph = FlowGraph(static_cast<std::size_t>(n), std::move(edges), s.name);
  return record;
}

TruthRecord parse_truth_section(const Section& s) {
  TruthRecord record{s.name, s.header_line, {}};
  for (const Line& line : s.body) {
    const auto t = tokens(line.text);
    if (t.size() < 2) throw ParseError({line.number, s.name, "expected 'weight v1 ... vk'"});
    const std::int64_t w = integer(t[0], s, line, "weight");
    if (w <= 0) throw ParseError({line.number, s.name, "nonpositive weight"});
    Transcript tr;
    tr.weight = static_cast<Flow>(w);
    for (std::size_t i = 1; i < t.size(); ++i) {
      const std::int64_t v = integer(t[i], s, line, "vertex id");
      if (v < 0 || v > static_cast<std::int64_t>(std::numeric_limits<VertexId>::max())) {
        throw ParseError({line.number, s.name, "vertex id out of range"});
      }
      tr.vertices.push_back(static_cast<VertexId>(v));
    }
    record.transcripts.push_back(std::move(tr));
  }
  return record;
}

LengthRecord parse_length_section(const Section& s) {
  LengthRecord record{s.name, s.header_line, {}, {}};
  std::map<VertexId, std::size_t> seen;
  for (const Line& line : s.body) {
    const auto t = tokens(line.text);
    if (t.size() != 2) throw ParseError({line.number, s.name, "expected 'vertex length'"});
    const std::int64_t v = integer(t[0], s, line, "vertex id");
    const std::int64_t len = integer(t[1], s, line, "length");
    if (v < 0 || v > static_cast<std::int64_t>(std::numeric_limits<VertexId>::max())) {
      throw ParseError({line.number, s.name, "vertex id out of range"});
    }
    if (len < 0) throw ParseError({line.number, s.name, "negative length"});
    const auto id = static_cast<VertexId>(v);
    if (auto it = seen.find(id); it != seen.end()) {
      record.warnings.push_back("line " + std::to_string(line.number) + ": duplicate length for vertex " +
                                std::to_string(id) + "; last value wins");
      record.entries[it->second].second = static_cast<std::uint64_t>(len);
      continue;
    }
    seen.emplace(id, record.entries.size());
    record.entries.emplace_back(id, static_cast<std::uint64_t>(len));
  }
  return record;
}

template <class Record, class ParseSection>
void parse_sections(std::istream& in, std::vector<Record>& records, std::vector<ParseIssue>& errors,
                    ParseSection parse) {
  for (const Section& s : split_sections(in, errors)) {
    try {
      records.push_back(parse(s));
    } catch (const ParseError& e) {
      errors.push_back(e.issue());
    } catch (const GraphError& e) {
      errors.push_back({s.header_line, s.name, e.what()});
    }
  }
}

// Name -> indices of graph records, consumed in order.
std::map<std::string, std::vector<std::size_t>> index_by_name(const std::vector<GraphRecord>& records) {
  std::map<std::string, std::vector<std::size_t>> index;
  for (std::size_t i = 0; i < records.size(); ++i) index[records[i].name].push_back(i);
  for (auto& [name, list] : index) std::reverse(list.begin(), list.end());
  return index;
}

}  // namespace

std::string ParseIssue::to_string() const {
  std::string out = "line " + std::to_string(line);
  if (!record.empty()) out += " (record '" + record + "')";
  return out + ": " + message;
}

GraphFile parse_graph_file(std::istream& in) {
  GraphFile file;
  parse_sections(in, file.records, file.errors, parse_graph_section);
  return file;
}

void emit_graph_record(std::ostream& out, const GraphRecord& record) {
  out << "# " << record.name << '\n' << record.graph.vertex_count() << '\n';
  for (const Edge& e : record.graph.edges()) out << e.tail << ' ' << e.head << ' ' << e.weight << '\n';
}

void emit_graph_file(std::ostream& out, std::span<const GraphRecord> records) {
  for (const GraphRecord& r : records) emit_graph_record(out, r);
}

TruthFile parse_truth_file(std::istream& in) {
  TruthFile file;
  parse_sections(in, file.records, file.errors, parse_truth_section);
  return file;
}

void emit_truth_file(std::ostream& out, std::span<const GraphRecord> records) {
  for (const GraphRecord& r : records) {
    if (!r.truth) continue;
    out << "# " << r.name << '\n';
    for (const Transcript& t : r.truth->transcripts) {
      out << t.weight;
      for (VertexId v : t.vertices) out << ' ' << v;
      out << '\n';
    }
  }
}

bool truth_reproduces_graph(const FlowGraph& graph, const GroundTruth& truth) {
  std::map<std::pair<VertexId, VertexId>, Flow> expected;
  for (const Edge& e : graph.edges()) expected[{e.tail, e.head}] += e.weight;
  std::map<std::pair<VertexId, VertexId>, Flow> actual;
  for (const Transcript& t : truth.transcripts) {
    for (std::size_t i = 0; i + 1 < t.vertices.size(); ++i) {
      actual[{t.vertices[i], t.vertices[i + 1]}] += t.weight;
    }
  }
  return expected == actual;
}

std::vector<ParseIssue> attach_truth(std::vector<GraphRecord>& records, const TruthFile& truth) {
  std::vector<ParseIssue> issues;
  auto index = index_by_name(records);
  for (const TruthRecord& tr : truth.records) {
    auto it = index.find(tr.name);
    if (it == index.end() || it->second.empty()) {
      issues.push_back({tr.line, tr.name, "truth record does not match any graph record"});
      continue;
    }
    GraphRecord& record = records[it->second.back()];
    it->second.pop_back();
    bool in_range = true;
    for (const Transcript& t : tr.transcripts) {
      for (VertexId v : t.vertices) in_range = in_range && v < record.graph.vertex_count();
    }
    if (!in_range) {
      issues.push_back({tr.line, tr.name, "truth references a vertex outside the graph"});
      continue;
    }
    record.truth = GroundTruth{tr.transcripts};
    if (!tr.transcripts.empty() && !truth_reproduces_graph(record.graph, *record.truth)) {
      record.warnings.push_back("truth superimposition does not reproduce the graph weights");
    }
  }
  return issues;
}

LengthFile parse_node_lengths(std::istream& in) {
  LengthFile file;
  parse_sections(in, file.records, file.errors, parse_length_section);
  return file;
}

std::vector<ParseIssue> attach_node_lengths(std::vector<GraphRecord>& records, const LengthFile& lengths) {
  std::vector<ParseIssue> issues;
  auto index = index_by_name(records);
  for (const LengthRecord& lr : lengths.records) {
    auto it = index.find(lr.name);
    if (it == index.end() || it->second.empty()) {
      issues.push_back({lr.line, lr.name, "length record does not match any graph record"});
      continue;
    }
    GraphRecord& record = records[it->second.back()];
    it->second.pop_back();
    const std::size_t n = record.graph.vertex_count();
    std::vector<std::uint64_t> table(n, 0);
    std::vector<bool> given(n, false);
    bool ok = true;
    for (const auto& [v, len] : lr.entries) {
      if (v >= n) {
        issues.push_back({lr.line, lr.name, "length for vertex " + std::to_string(v) + " outside the graph"});
        ok = false;
        break;
      }
      table[v] = len;
      given[v] = true;
    }
    if (!ok) continue;
    for (const std::string& w : lr.warnings) record.warnings.push_back(w);
    std::size_t missing = 0;
    for (bool g : given) missing += g ? 0 : 1;
    if (missing > 0) {
      record.warnings.push_back(std::to_string(missing) + " vertices without a length default to 0");
    }
    record.graph.set_node_lengths(std::move(table));
  }
  return issues;
}

}  // namespace safeflow
