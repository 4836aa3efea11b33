#include "safeflow/represent.hpp"

#include <algorithm>

#include "safeflow/aho_corasick.hpp"

namespace safeflow {

namespace {

// keep[i] is false when patterns[i] repeats an earlier pattern or occurs
// inside a different pattern. Linear in the total pattern length: a state
// is marked covered at most once, and marking stops at the first covered
// state since covered states have covered dictionary suffixes.
std::vector<bool> surviving(std::span<const std::span<const EdgeId>> patterns) {
  AhoCorasick automaton;
  std::vector<std::size_t> canonical(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) canonical[i] = automaton.add_pattern(patterns[i]);
  automaton.build();

  std::vector<bool> covered(automaton.state_count(), false);
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (canonical[i] != i) continue;
    const auto text = patterns[i];
    const AhoCorasick::State own = automaton.pattern_state(i);
    AhoCorasick::State state = AhoCorasick::kRoot;
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
      state = automaton.step(state, text[pos]);
      AhoCorasick::State s = automaton.terminal_pattern(state) != AhoCorasick::kNoPattern
                                 ? state
                                 : automaton.dictionary_link(state);
      if (s == own) s = automaton.dictionary_link(s);
      while (s != AhoCorasick::kRoot && !covered[s]) {
        covered[s] = true;
        s = automaton.dictionary_link(s);
      }
    }
  }

  std::vector<bool> keep(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    keep[i] = canonical[i] == i && !covered[automaton.pattern_state(i)];
  }
  return keep;
}

}  // namespace

std::size_t SafeReport::raw_size() const {
  std::size_t total = 0;
  for (const SafePath& p : raw) total += p.path.size();
  return total;
}

std::size_t SafeReport::concise_size() const {
  std::size_t total = 0;
  for (const ConciseEntry& e : concise) total += e.carrier.size();
  return total;
}

std::vector<ConciseEntry> merge_windows(const Decomposition& decomposition,
                                        std::span<const MaximalSafeWindow> windows) {
  std::vector<ConciseEntry> entries;
  std::size_t i = 0;
  while (i < windows.size()) {
    const std::size_t host = windows[i].host_path_index;
    const std::size_t begin = windows[i].left;
    std::size_t end = windows[i].right;
    std::size_t j = i + 1;
    while (j < windows.size() && windows[j].host_path_index == host && windows[j].left <= end + 1) {
      end = std::max(end, windows[j].right);
      ++j;
    }
    const auto& host_edges = decomposition.paths.at(host).path.edges;
    ConciseEntry entry;
    entry.host_path_index = host;
    entry.host_offset = begin;
    entry.carrier.edges.assign(host_edges.begin() + static_cast<std::ptrdiff_t>(begin),
                               host_edges.begin() + static_cast<std::ptrdiff_t>(end) + 1);
    for (std::size_t w = i; w < j; ++w) {
      entry.intervals.push_back({windows[w].left - begin, windows[w].right - begin, windows[w].excess});
    }
    entries.push_back(std::move(entry));
    i = j;
  }
  return entries;
}

SafeReport dedup(std::span<const ConciseEntry> entries) {
  std::vector<std::span<const EdgeId>> patterns;
  for (const ConciseEntry& e : entries) {
    for (const Interval& iv : e.intervals) {
      patterns.push_back(std::span<const EdgeId>(e.carrier.edges).subspan(iv.left, iv.right - iv.left + 1));
    }
  }
  const std::vector<bool> keep = surviving(patterns);

  SafeReport report;
  std::size_t next = 0;
  for (const ConciseEntry& e : entries) {
    std::vector<Interval> alive;
    for (const Interval& iv : e.intervals) {
      if (keep[next++]) alive.push_back(iv);
    }
    std::sort(alive.begin(), alive.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    std::size_t i = 0;
    while (i < alive.size()) {
      const std::size_t begin = alive[i].left;
      std::size_t end = alive[i].right;
      std::size_t j = i + 1;
      while (j < alive.size() && alive[j].left <= end + 1) {
        end = std::max(end, alive[j].right);
        ++j;
      }
      ConciseEntry cut;
      cut.host_path_index = e.host_path_index;
      cut.host_offset = e.host_offset + begin;
      cut.carrier.edges.assign(e.carrier.edges.begin() + static_cast<std::ptrdiff_t>(begin),
                               e.carrier.edges.begin() + static_cast<std::ptrdiff_t>(end) + 1);
      for (std::size_t w = i; w < j; ++w) {
        cut.intervals.push_back({alive[w].left - begin, alive[w].right - begin, alive[w].excess});
        report.raw.push_back(
            {Path{std::vector<EdgeId>(e.carrier.edges.begin() + static_cast<std::ptrdiff_t>(alive[w].left),
                                      e.carrier.edges.begin() + static_cast<std::ptrdiff_t>(alive[w].right) + 1)},
             alive[w].excess});
      }
      report.concise.push_back(std::move(cut));
      i = j;
    }
  }
  return report;
}

std::vector<Path> remove_contained(std::span<const Path> paths) {
  std::vector<std::span<const EdgeId>> patterns;
  patterns.reserve(paths.size());
  for (const Path& p : paths) patterns.emplace_back(p.edges);
  const std::vector<bool> keep = surviving(patterns);
  std::vector<Path> result;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    if (keep[i]) result.push_back(paths[i]);
  }
  return result;
}

SafeReport safe_report(const FlowGraph& graph, const FlowAggregates& agg,
                       const Decomposition& decomposition, const EnumerateOptions& options) {
  const auto windows = safe_and_complete(graph, agg, decomposition, options);
  const auto entries = merge_windows(decomposition, windows);
  return dedup(entries);
}

}  // namespace safeflow
