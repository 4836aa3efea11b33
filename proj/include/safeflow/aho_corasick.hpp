#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace safeflow {

/// Aho-Corasick automaton over an integer alphabet. Identical patterns share
/// one terminal state; `add_pattern` returns the id of the first pattern that
/// reached that state.
class AhoCorasick {
 public:
  using Symbol = std::uint32_t;
  using State = std::uint32_t;
  static constexpr State kRoot = 0;
  static constexpr std::size_t kNoPattern = static_cast<std::size_t>(-1);

  AhoCorasick();

  std::size_t add_pattern(std::span<const Symbol> pattern);
  /// Computes failure and dictionary links. No patterns may be added after.
  void build();

  std::size_t pattern_count() const { return pattern_state_.size(); }
  std::size_t state_count() const { return nodes_.size(); }
  State pattern_state(std::size_t pattern) const { return pattern_state_.at(pattern); }

  /// Transition with failure links; amortized O(1) along a text.
  State step(State state, Symbol symbol) const;
  /// Pattern ending exactly at `state`, or kNoPattern.
  std::size_t terminal_pattern(State state) const { return nodes_[state].pattern; }
  /// Nearest proper suffix state that ends a pattern, or kRoot.
  State dictionary_link(State state) const { return nodes_[state].dictionary; }

  /// Calls on_match(pattern, end_position) for every occurrence of every
  /// distinct pattern in `text`; end_position is exclusive.
  template <class OnMatch>
  void scan(std::span<const Symbol> text, OnMatch&& on_match) const {
    State state = kRoot;
    for (std::size_t i = 0; i < text.size(); ++i) {
      state = step(state, text[i]);
      for (State s = nodes_[state].pattern != kNoPattern ? state : nodes_[state].dictionary;
           s != kRoot; s = nodes_[s].dictionary) {
        on_match(nodes_[s].pattern, i + 1);
      }
    }
  }

 private:
  struct Node {
    State fail = kRoot;
    State dictionary = kRoot;
    std::size_t pattern = kNoPattern;
  };

  std::optional<State> child(State state, Symbol symbol) const;

  static std::uint64_t key(State state, Symbol symbol) {
    return (static_cast<std::uint64_t>(state) << 32) | symbol;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, State> children_;
  std::vector<std::vector<Symbol>> child_symbols_;
  std::vector<State> pattern_state_;
  bool built_ = false;
};

}  // namespace safeflow
