#include "safeflow/aho_corasick.hpp"

#include <queue>
#include <stdexcept>

namespace safeflow {

AhoCorasick::AhoCorasick() : nodes_(1), child_symbols_(1) {}

std::optional<AhoCorasick::State> AhoCorasick::child(State state, Symbol symbol) const {
  auto it = children_.find(key(state, symbol));
  if (it == children_.end()) return std::nullopt;
  return it->second;
}

std::size_t AhoCorasick::add_pattern(std::span<const Symbol> pattern) {
  if (built_) throw std::logic_error("automaton already built");
  if (pattern.empty()) throw std::invalid_argument("empty pattern");
  State state = kRoot;
  for (Symbol symbol : pattern) {
    if (auto next = child(state, symbol)) {
      state = *next;
      continue;
    }
    const auto created = static_cast<State>(nodes_.size());
    nodes_.emplace_back();
    child_symbols_.emplace_back();
    children_.emplace(key(state, symbol), created);
    child_symbols_[state].push_back(symbol);
    state = created;
  }
  const std::size_t id = pattern_state_.size();
  pattern_state_.push_back(state);
  if (nodes_[state].pattern == kNoPattern) nodes_[state].pattern = id;
  return nodes_[state].pattern;
}

void AhoCorasick::build() {
  if (built_) return;
  std::queue<State> queue;
  for (Symbol symbol : child_symbols_[kRoot]) queue.push(*child(kRoot, symbol));
  while (!queue.empty()) {
    const State state = queue.front();
    queue.pop();
    for (Symbol symbol : child_symbols_[state]) {
      const State next = *child(state, symbol);
      State f = nodes_[state].fail;
      while (f != kRoot && !child(f, symbol)) f = nodes_[f].fail;
      auto target = child(f, symbol);
      nodes_[next].fail = (target && *target != next) ? *target : kRoot;
      const State fail = nodes_[next].fail;
      nodes_[next].dictionary = nodes_[fail].pattern != kNoPattern ? fail : nodes_[fail].dictionary;
      queue.push(next);
    }
  }
  built_ = true;
}

AhoCorasick::State AhoCorasick::step(State state, Symbol symbol) const {
  for (;;) {
    if (auto next = child(state, symbol)) return *next;
    if (state == kRoot) return kRoot;
    state = nodes_[state].fail;
  }
}

}  // namespace safeflow
