#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "safeflow/flow_graph.hpp"
#include "safeflow/metrics.hpp"

namespace safeflow {

struct GraphRecord {
  std::string name;
  FlowGraph graph;
  std::optional<GroundTruth> truth;
  std::vector<std::string> warnings;
};

/// A problem in an input file, tied to a 1-based line and the enclosing
/// record (empty before the first header).
struct ParseIssue {
  std::size_t line = 0;
  std::string record;
  std::string message;

  std::string to_string() const;
};

class ParseError : public Error {
 public:
  explicit ParseError(ParseIssue issue) : Error(issue.to_string()), issue_(std::move(issue)) {}
  const ParseIssue& issue() const { return issue_; }

 private:
  ParseIssue issue_;
};

// Graph files: records open with a '#' header (the rest of the line is the
// name), then a vertex count line, then "tail head weight" edge lines. A
// malformed record is reported and skipped; parsing resumes at the next
// header. LF and CRLF are both accepted.

struct GraphFile {
  std::vector<GraphRecord> records;
  std::vector<ParseIssue> errors;
};

GraphFile parse_graph_file(std::istream& in);
/// Canonical form: "# name", vertex count, edges in id order, LF endings.
void emit_graph_record(std::ostream& out, const GraphRecord& record);
void emit_graph_file(std::ostream& out, std::span<const GraphRecord> records);

// Truth files use the same framing with "weight v1 v2 ... vk" lines.

struct TruthRecord {
  std::string name;
  std::size_t line = 0;
  std::vector<Transcript> transcripts;
};

struct TruthFile {
  std::vector<TruthRecord> records;
  std::vector<ParseIssue> errors;
};

TruthFile parse_truth_file(std::istream& in);
void emit_truth_file(std::ostream& out, std::span<const GraphRecord> records);

/// Per-edge sums of the transcripts equal the graph weights exactly
/// (parallel edges compared through their summed weight).
bool truth_reproduces_graph(const FlowGraph& graph, const GroundTruth& truth);

/// Matches truth records to graph records by name, in order of appearance.
/// Unmatched truth headers are errors; a mismatching superimposition is a
/// warning on the record. Empty truth records leave k undefined.
std::vector<ParseIssue> attach_truth(std::vector<GraphRecord>& records, const TruthFile& truth);

// Node length files: same framing with "vertex length" lines.

struct LengthRecord {
  std::string name;
  std::size_t line = 0;
  std::vector<std::pair<VertexId, std::uint64_t>> entries;
  std::vector<std::string> warnings;
};

struct LengthFile {
  std::vector<LengthRecord> records;
  std::vector<ParseIssue> errors;
};

LengthFile parse_node_lengths(std::istream& in);

/// Missing vertices default to 0 with a warning; duplicates keep the last
/// value (warned at parse time); unknown names and out-of-range vertices
/// are errors.
std::vector<ParseIssue> attach_node_lengths(std::vector<GraphRecord>& records, const LengthFile& lengths);

}  // namespace safeflow
