#pragma once

#include <memory>
#include <span>
#include <vector>

#include "xmlstream/automata.hpp"
#include "xmlstream/dtd.hpp"

namespace xmlstream {

// A DTD compiled once into its per-rule automata and the composite automata.
// Immutable after construction.
class Schema {
 public:
  explicit Schema(Dtd dtd, bool minimize = false);

  const Dtd& dtd() const noexcept { return dtd_; }
  Label root() const noexcept { return dtd_.root; }
  bool has_rule(Label l) const noexcept;

  // Membership of `word` in L(D(parent)); throws NoRule for unknown parents.
  bool check(Label parent, std::span<const Label> word) const;
  const Dfa& rule_automaton(Label l) const;

  const Dfa& A() const noexcept { return a_; }
  const Dfa& A1() const noexcept { return a1_; }
  const Dfa& A2() const noexcept { return a2_; }

 private:
  Dtd dtd_;
  std::vector<std::int32_t> index_;  // label id -> rules_ slot
  std::vector<Dfa> rules_;
  Dfa a_;
  Dfa a1_;
  Dfa a2_;
};

bool check(const Dtd& dtd, Label parent, std::span<const Label> word);

}  // namespace xmlstream
