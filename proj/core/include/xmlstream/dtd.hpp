#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmlstream/label.hpp"

namespace xmlstream {

struct Regex {
  enum class Op { Epsilon, Symbol, Concat, Alt, Star, Plus, Optional };

  Op op = Op::Epsilon;
  Label symbol;
  std::vector<Regex> operands;

  static Regex epsilon() { return Regex{}; }
  static Regex sym(Label l) { return Regex{Op::Symbol, l, {}}; }
  static Regex concat(std::vector<Regex> parts);
  static Regex alt(std::vector<Regex> parts);
  static Regex star(Regex r) { return Regex{Op::Star, {}, {std::move(r)}}; }
  static Regex plus(Regex r) { return Regex{Op::Plus, {}, {std::move(r)}}; }
  static Regex optional(Regex r) { return Regex{Op::Optional, {}, {std::move(r)}}; }

  // Space-separated token form accepted by parse_regex.
  std::string to_text() const;
  void collect_symbols(std::vector<Label>& out) const;
};

// Tokens: labels, | ( ) * + ? and ~ for the empty word; juxtaposition concatenates.
Regex parse_regex(std::string_view text);

struct Dtd {
  Label root;
  std::map<Label, Regex> rules;
  std::vector<Label> order;  // declaration order

  const Regex* rule(Label l) const;
  void add_rule(Label l, Regex r);
  // Every label with a rule, in declaration order.
  const std::vector<Label>& labels() const noexcept { return order; }
  std::string to_text() const;
};

Dtd parse_dtd(std::string_view text);

// Copy of `dtd` with the rule _ = ~ appended.
Dtd with_bottom_rule(const Dtd& dtd);

}  // namespace xmlstream
