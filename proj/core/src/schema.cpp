#include "xmlstream/schema.hpp"

#include "xmlstream/error.hpp"

namespace xmlstream {

Schema::Schema(Dtd dtd, bool minimize) : dtd_(std::move(dtd)) {
  Dtd full = with_bottom_rule(dtd_);
  auto alpha = full.labels();
  std::uint32_t limit = 0;
  for (Label l : alpha) limit = std::max(limit, l.id() + 1);
  index_.assign(limit, -1);
  for (Label l : alpha) {
    Dfa d = regex_to_dfa(*full.rule(l), alpha);
    index_[l.id()] = static_cast<std::int32_t>(rules_.size());
    rules_.push_back(minimize ? d.minimized() : std::move(d));
  }
  a_ = build_A(full);
  a1_ = build_A1(full);
  a2_ = build_A2(full);
  if (minimize) {
    a_ = a_.minimized();
    a1_ = a1_.minimized();
    a2_ = a2_.minimized();
  }
}

bool Schema::has_rule(Label l) const noexcept { return l.id() < index_.size() && index_[l.id()] >= 0; }

const Dfa& Schema::rule_automaton(Label l) const {
  if (!has_rule(l)) throw Error(ErrorCode::NoRule, "no rule for '" + l.str() + "'");
  return rules_[static_cast<std::size_t>(index_[l.id()])];
}

bool Schema::check(Label parent, std::span<const Label> word) const {
  return rule_automaton(parent).accepts(word);
}

bool check(const Dtd& dtd, Label parent, std::span<const Label> word) {
  const Regex* r = dtd.rule(parent);
  if (!r) throw Error(ErrorCode::NoRule, "no rule for '" + parent.str() + "'");
  std::vector<Label> alpha = dtd.labels();
  return regex_to_dfa(*r, alpha).accepts(word);
}

}  // namespace xmlstream
