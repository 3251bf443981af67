#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xmlstream/dtd.hpp"

namespace xmlstream {

// Total deterministic automaton over a declared alphabet. Letters outside the
// alphabet lead to the dead state.
class Dfa {
 public:
  using State = std::int32_t;

  Dfa() = default;
  explicit Dfa(std::vector<Label> alphabet);

  State add_state(bool accepting = false);
  void set_transition(State from, Label letter, State to);
  void set_initial(State s) { initial_ = s; }
  void set_accepting(State s, bool on) { accepting_[static_cast<std::size_t>(s)] = on; }
  // Routes every missing transition to a (possibly new) dead state.
  void complete();

  State initial() const noexcept { return initial_; }
  State dead() const noexcept { return dead_; }
  State step(State s, Label letter) const noexcept {
    auto id = letter.id();
    if (id >= column_.size() || column_[id] < 0) return dead_;
    return delta_[static_cast<std::size_t>(s) * alphabet_.size() + static_cast<std::size_t>(column_[id])];
  }
  bool accepting(State s) const noexcept { return s >= 0 && accepting_[static_cast<std::size_t>(s)]; }
  State run(State from, std::span<const Label> word) const noexcept;
  bool accepts(std::span<const Label> word) const noexcept { return accepting(run(initial_, word)); }

  std::size_t state_count() const noexcept { return accepting_.size(); }
  const std::vector<Label>& alphabet() const noexcept { return alphabet_; }
  bool in_alphabet(Label l) const noexcept { return l.id() < column_.size() && column_[l.id()] >= 0; }
  // Transition target, or -1 when not yet set (before complete()).
  State raw(State s, std::size_t column) const noexcept {
    return delta_[static_cast<std::size_t>(s) * alphabet_.size() + column];
  }

  Dfa minimized() const;

 private:
  std::vector<Label> alphabet_;
  std::vector<std::int32_t> column_;  // label id -> column
  std::vector<State> delta_;
  std::vector<bool> accepting_;
  State initial_ = 0;
  State dead_ = -1;
};

struct Nfa {
  struct Edge {
    Label letter;  // empty label = epsilon
    std::int32_t to;
  };

  std::vector<std::vector<Edge>> edges;
  std::vector<bool> accepting;
  std::vector<std::int32_t> initial;

  std::int32_t add_state(bool accept = false);
  void add_edge(std::int32_t from, Label letter, std::int32_t to) { edges[static_cast<std::size_t>(from)].push_back({letter, to}); }
  std::size_t size() const noexcept { return edges.size(); }
};

Nfa thompson(const Regex& regex);
Dfa determinize(const Nfa& nfa, const std::vector<Label>& alphabet);
Dfa regex_to_dfa(const Regex& regex, const std::vector<Label>& alphabet);

// Composite automata over a DTD that already contains the rule _ = ~.
// A accepts a w iff w is in D(a); A1 accepts the reversals of A's words;
// A2 accepts w a iff w is in D(a). A1 and A2 treat _ as an identity letter.
Dfa build_A(const Dtd& dtd);
Dfa build_A1(const Dtd& dtd);
Dfa build_A2(const Dtd& dtd);

}  // namespace xmlstream
