#include "xmlstream/automata.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "xmlstream/error.hpp"

namespace xmlstream {

Dfa::Dfa(std::vector<Label> alphabet) {
  std::uint32_t limit = 0;
  for (Label l : alphabet) limit = std::max(limit, l.id() + 1);
  column_.assign(limit, -1);
  for (Label l : alphabet) {
    if (column_[l.id()] >= 0) continue;
    column_[l.id()] = static_cast<std::int32_t>(alphabet_.size());
    alphabet_.push_back(l);
  }
}

Dfa::State Dfa::add_state(bool accepting) {
  auto s = static_cast<State>(accepting_.size());
  accepting_.push_back(accepting);
  delta_.resize(delta_.size() + alphabet_.size(), -1);
  return s;
}

void Dfa::set_transition(State from, Label letter, State to) {
  if (!in_alphabet(letter)) throw Error(ErrorCode::UnknownLabel, "letter '" + letter.str() + "' not in alphabet");
  delta_[static_cast<std::size_t>(from) * alphabet_.size() + static_cast<std::size_t>(column_[letter.id()])] = to;
}

void Dfa::complete() {
  if (dead_ < 0) {
    dead_ = add_state(false);
    for (std::size_t c = 0; c < alphabet_.size(); ++c) {
      delta_[static_cast<std::size_t>(dead_) * alphabet_.size() + c] = dead_;
    }
  }
  for (auto& t : delta_) {
    if (t < 0) t = dead_;
  }
}

Dfa::State Dfa::run(State from, std::span<const Label> word) const noexcept {
  State s = from;
  for (Label l : word) s = step(s, l);
  return s;
}

Dfa Dfa::minimized() const {
  const std::size_t k = alphabet_.size();
  // reachable states
  std::vector<State> order;
  std::vector<bool> seen(state_count(), false);
  std::queue<State> q;
  q.push(initial_);
  seen[static_cast<std::size_t>(initial_)] = true;
  while (!q.empty()) {
    State s = q.front();
    q.pop();
    order.push_back(s);
    for (std::size_t c = 0; c < k; ++c) {
      State t = raw(s, c);
      if (t >= 0 && !seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        q.push(t);
      }
    }
  }
  // Moore refinement
  std::vector<std::int32_t> cls(state_count(), -1);
  for (State s : order) cls[static_cast<std::size_t>(s)] = accepting(s) ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<std::int32_t>, std::int32_t> sig_ids;
    std::vector<std::int32_t> next(state_count(), -1);
    for (State s : order) {
      std::vector<std::int32_t> sig{cls[static_cast<std::size_t>(s)]};
      for (std::size_t c = 0; c < k; ++c) {
        State t = raw(s, c);
        sig.push_back(t >= 0 ? cls[static_cast<std::size_t>(t)] : -1);
      }
      auto [it, fresh] = sig_ids.emplace(std::move(sig), static_cast<std::int32_t>(sig_ids.size()));
      next[static_cast<std::size_t>(s)] = it->second;
    }
    bool stable = sig_ids.size() == classes;
    classes = sig_ids.size();
    cls = std::move(next);
    if (stable) break;
  }
  Dfa out(alphabet_);
  for (std::size_t i = 0; i < classes; ++i) out.add_state(false);
  for (State s : order) {
    State c = cls[static_cast<std::size_t>(s)];
    out.set_accepting(c, accepting(s));
    for (std::size_t col = 0; col < k; ++col) {
      State t = raw(s, col);
      out.delta_[static_cast<std::size_t>(c) * k + col] = t >= 0 ? cls[static_cast<std::size_t>(t)] : -1;
    }
  }
  out.initial_ = cls[static_cast<std::size_t>(initial_)];
  if (dead_ >= 0 && seen[static_cast<std::size_t>(dead_)]) out.dead_ = cls[static_cast<std::size_t>(dead_)];
  out.complete();
  return out;
}

std::int32_t Nfa::add_state(bool accept) {
  edges.emplace_back();
  accepting.push_back(accept);
  return static_cast<std::int32_t>(edges.size() - 1);
}

namespace {

struct Fragment {
  std::int32_t start;
  std::int32_t end;
};

Fragment build(Nfa& n, const Regex& r) {
  const Label eps;
  std::int32_t s = n.add_state();
  std::int32_t e = n.add_state();
  switch (r.op) {
    case Regex::Op::Epsilon:
      n.add_edge(s, eps, e);
      break;
    case Regex::Op::Symbol:
      n.add_edge(s, r.symbol, e);
      break;
    case Regex::Op::Concat: {
      std::int32_t at = s;
      for (const auto& part : r.operands) {
        Fragment f = build(n, part);
        n.add_edge(at, eps, f.start);
        at = f.end;
      }
      n.add_edge(at, eps, e);
      break;
    }
    case Regex::Op::Alt:
      for (const auto& part : r.operands) {
        Fragment f = build(n, part);
        n.add_edge(s, eps, f.start);
        n.add_edge(f.end, eps, e);
      }
      break;
    case Regex::Op::Star:
    case Regex::Op::Plus:
    case Regex::Op::Optional: {
      Fragment f = build(n, r.operands.front());
      n.add_edge(s, eps, f.start);
      n.add_edge(f.end, eps, e);
      if (r.op != Regex::Op::Optional) n.add_edge(f.end, eps, f.start);
      if (r.op != Regex::Op::Plus) n.add_edge(s, eps, e);
      break;
    }
  }
  return {s, e};
}

void close_over_epsilon(const Nfa& n, std::vector<std::int32_t>& set, std::vector<char>& mark) {
  std::vector<std::int32_t> work(set.begin(), set.end());
  for (auto s : set) mark[static_cast<std::size_t>(s)] = 1;
  while (!work.empty()) {
    auto s = work.back();
    work.pop_back();
    for (const auto& edge : n.edges[static_cast<std::size_t>(s)]) {
      if (!edge.letter.empty() || mark[static_cast<std::size_t>(edge.to)]) continue;
      mark[static_cast<std::size_t>(edge.to)] = 1;
      set.push_back(edge.to);
      work.push_back(edge.to);
    }
  }
  for (auto s : set) mark[static_cast<std::size_t>(s)] = 0;
  std::sort(set.begin(), set.end());
}

}  // namespace

Nfa thompson(const Regex& regex) {
  Nfa n;
  Fragment f = build(n, regex);
  n.initial = {f.start};
  n.accepting[static_cast<std::size_t>(f.end)] = true;
  return n;
}

Dfa determinize(const Nfa& nfa, const std::vector<Label>& alphabet) {
  Dfa dfa(alphabet);
  const auto& letters = dfa.alphabet();
  std::vector<std::int32_t> column(label_id_limit(), -1);
  for (std::size_t c = 0; c < letters.size(); ++c) column[letters[c].id()] = static_cast<std::int32_t>(c);

  std::vector<char> mark(nfa.size(), 0);
  std::map<std::vector<std::int32_t>, Dfa::State> ids;
  std::vector<std::vector<std::int32_t>> sets;
  auto intern = [&](std::vector<std::int32_t> set) {
    auto it = ids.find(set);
    if (it != ids.end()) return it->second;
    bool acc = std::any_of(set.begin(), set.end(), [&](auto s) { return nfa.accepting[static_cast<std::size_t>(s)]; });
    Dfa::State id = dfa.add_state(acc);
    ids.emplace(set, id);
    sets.push_back(std::move(set));
    return id;
  };

  std::vector<std::int32_t> start(nfa.initial.begin(), nfa.initial.end());
  close_over_epsilon(nfa, start, mark);
  dfa.set_initial(intern(std::move(start)));

  std::vector<std::vector<std::int32_t>> moves(letters.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (auto& m : moves) m.clear();
    for (auto s : sets[i]) {
      for (const auto& edge : nfa.edges[static_cast<std::size_t>(s)]) {
        if (edge.letter.empty()) continue;
        auto id = edge.letter.id();
        if (id >= column.size() || column[id] < 0) continue;
        moves[static_cast<std::size_t>(column[id])].push_back(edge.to);
      }
    }
    for (std::size_t c = 0; c < letters.size(); ++c) {
      auto& m = moves[c];
      if (m.empty()) continue;
      std::sort(m.begin(), m.end());
      m.erase(std::unique(m.begin(), m.end()), m.end());
      std::vector<std::int32_t> target = m;
      close_over_epsilon(nfa, target, mark);
      Dfa::State t = intern(std::move(target));
      dfa.set_transition(static_cast<Dfa::State>(i), letters[c], t);
    }
  }
  dfa.complete();
  return dfa;
}

Dfa regex_to_dfa(const Regex& regex, const std::vector<Label>& alphabet) {
  return determinize(thompson(regex), alphabet);
}

namespace {

const Regex& rule_of(const Dtd& dtd, Label l) {
  const Regex* r = dtd.rule(l);
  if (!r) throw Error(ErrorCode::NoRule, "no rule for '" + l.str() + "'");
  return *r;
}

void bottom_identity(Dfa& d) {
  for (Dfa::State q = 0; q < static_cast<Dfa::State>(d.state_count()); ++q) d.set_transition(q, Label::bottom(), q);
}

std::vector<Label> composite_alphabet(const Dtd& dtd) {
  std::vector<Label> alpha = dtd.labels();
  if (std::find(alpha.begin(), alpha.end(), Label::bottom()) == alpha.end()) alpha.push_back(Label::bottom());
  return alpha;
}

}  // namespace

Dfa build_A(const Dtd& dtd) {
  std::vector<Label> alpha = composite_alphabet(dtd);
  Dfa a(alpha);
  Dfa::State q0 = a.add_state(false);
  a.set_initial(q0);
  for (Label label : alpha) {
    Dfa d = label.is_bottom() && !dtd.rule(label) ? regex_to_dfa(Regex::epsilon(), alpha)
                                                  : regex_to_dfa(rule_of(dtd, label), alpha);
    std::vector<Dfa::State> map(d.state_count(), -1);
    for (Dfa::State s = 0; s < static_cast<Dfa::State>(d.state_count()); ++s) {
      if (s != d.dead()) map[static_cast<std::size_t>(s)] = a.add_state(d.accepting(s));
    }
    for (Dfa::State s = 0; s < static_cast<Dfa::State>(d.state_count()); ++s) {
      if (s == d.dead()) continue;
      for (std::size_t c = 0; c < alpha.size(); ++c) {
        Dfa::State t = d.raw(s, c);
        if (t != d.dead()) a.set_transition(map[static_cast<std::size_t>(s)], d.alphabet()[c], map[static_cast<std::size_t>(t)]);
      }
    }
    a.set_transition(q0, label, map[static_cast<std::size_t>(d.initial())]);
  }
  a.complete();
  return a;
}

Dfa build_A1(const Dtd& dtd) {
  Dfa a = build_A(dtd);
  const auto& alpha = a.alphabet();
  Nfa n;
  for (std::size_t s = 0; s < a.state_count(); ++s) n.add_state(false);
  n.accepting[static_cast<std::size_t>(a.initial())] = true;
  for (Dfa::State s = 0; s < static_cast<Dfa::State>(a.state_count()); ++s) {
    if (s == a.dead()) continue;
    if (a.accepting(s)) n.initial.push_back(s);
    for (std::size_t c = 0; c < alpha.size(); ++c) {
      Dfa::State t = a.raw(s, c);
      if (t == a.dead() || alpha[c].is_bottom()) continue;
      n.add_edge(t, alpha[c], s);
    }
  }
  Dfa d = determinize(n, alpha);
  bottom_identity(d);
  return d;
}

Dfa build_A2(const Dtd& dtd) {
  std::vector<Label> alpha = composite_alphabet(dtd);
  Nfa n;
  std::int32_t start = n.add_state(false);
  std::int32_t final_state = n.add_state(true);
  n.initial = {start};
  for (Label label : alpha) {
    if (label.is_bottom()) continue;
    Dfa d = regex_to_dfa(rule_of(dtd, label), alpha);
    auto base = static_cast<std::int32_t>(n.size());
    for (std::size_t s = 0; s < d.state_count(); ++s) n.add_state(false);
    n.add_edge(start, Label{}, base + d.initial());
    for (Dfa::State s = 0; s < static_cast<Dfa::State>(d.state_count()); ++s) {
      if (s == d.dead()) continue;
      for (std::size_t c = 0; c < alpha.size(); ++c) {
        Dfa::State t = d.raw(s, c);
        if (t != d.dead()) n.add_edge(base + s, d.alphabet()[c], base + t);
      }
      if (d.accepting(s)) n.add_edge(base + s, label, final_state);
    }
  }
  Dfa out = determinize(n, alpha);
  bottom_identity(out);
  return out;
}

}  // namespace xmlstream
