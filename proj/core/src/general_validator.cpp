#include "xmlstream/general_validator.hpp"

#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"

namespace xmlstream {

namespace {

void require_plain(const Tag& x) {
  if (!x.is_opening() && !x.is_closing()) {
    throw Error(ErrorCode::MalformedToken, "unexpected " + token_text(x) + " in FCNS^_ document");
  }
}

}  // namespace

void annotate_ann1(Machine& m, TapeId bot, TapeId out, const Dfa& A1) {
  ScopedCells registers(m.meter(), 2);  // previous kind and state
  ReadPass in = m.read(bot);
  WritePass w = m.append(out);
  bool prev_opening = false;
  Dfa::State prev = A1.initial();
  while (!in.at_end()) {
    Tag x = in.next();
    require_plain(x);
    if (x.is_closing()) {
      prev = A1.step(prev_opening ? A1.initial() : prev, x.label);
      x.state = prev;
    }
    prev_opening = x.is_opening();
    w.write(x);
  }
}

void annotate_ann2(Machine& m, TapeId bot, TapeId out, const Dfa& A2) {
  ScopedCells registers(m.meter(), 3);  // previous kind, state, first flag
  ReadPass in = m.read(bot, Direction::Backward);
  WritePass w = m.append(out);
  bool first = true;
  bool prev_opening = false;
  Dfa::State prev = A2.initial();
  while (!in.at_end()) {
    Tag x = in.next();
    require_plain(x);
    if (x.is_closing()) {
      if (first) {
        prev = A2.initial();
      } else {
        prev = A2.step(prev_opening ? A2.initial() : prev, x.label);
      }
      x.state = prev;
    }
    first = false;
    prev_opening = x.is_opening();
    w.write(x);
  }
}

CheckFn ann1_check(const Dfa& A1) {
  return [&A1](const Tag& parent, const Tag* left, const Tag*) {
    if (!left) return parent.label.is_bottom() || A1.accepting(A1.step(A1.initial(), parent.label));
    return A1.accepting(A1.step(left->state, parent.label));
  };
}

namespace {

// Role-swapped pass over the ann2 tape: the pending item learns ann2 of the last
// sibling of its parent's children, which is where the children word ends.
class Ann2Visitor : public PairVisitor {
 public:
  explicit Ann2Visitor(const Dfa& A2) : a2_(A2) {}

  bool leaf(const Tag& node) override {
    return node.label.is_bottom() || a2_.accepting(a2_.step(a2_.initial(), node.label));
  }

  bool pair(const Tag& parent, const PendingPair& item) override {
    if (item.recovered_state < 0) throw Error(ErrorCode::StreamDesync, "last sibling never identified");
    return a2_.accepting(a2_.step(item.recovered_state, parent.label));
  }

  void perceived_opening(const Tag& x, const Tag* next, bool next_is_closing, PendingPair* top) override {
    if (!top || top->recovered_state >= 0) return;
    if (next_is_closing || (next && next->label.is_bottom())) top->recovered_state = x.state;
  }

 private:
  const Dfa& a2_;
};

}  // namespace

ValidationReport validate_fcns_onepass(Machine& m, TapeId bot, const Schema& schema, ValidationOptions opt) {
  if (!opt.root) opt.root = schema.root();
  TapeId aux1 = m.auxiliary(1);
  annotate_ann1(m, bot, aux1, schema.A1());
  return validate_onepass(m, aux1, ann1_check(schema.A1()), opt);
}

ValidationReport validate_fcns_twopass(Machine& m, TapeId bot, const Schema& schema, ValidationOptions opt) {
  if (!opt.root) opt.root = schema.root();
  TapeId aux1 = m.auxiliary(1);
  TapeId aux2 = m.auxiliary(2);
  ValidationReport report;

  annotate_ann1(m, bot, aux1, schema.A1());
  CheckFn forward = ann1_check(schema.A1());
  ValidationReport fwd = validate_leftheavy(m, aux1, StreamView::forward(), forward, opt);
  report.verdict = fwd.verdict;
  report.violations = std::move(fwd.violations);
  report.checks = std::move(fwd.checks);
  report.forward = fwd.forward;

  if (report.verdict.valid || opt.collect_all) {
    annotate_ann2(m, bot, aux2, schema.A2());
    Ann2Visitor visitor(schema.A2());
    ValidationOptions back = opt;
    back.root.reset();
    run_left_heavy(m, aux2, StreamView::prereversed(), visitor, back, report, report.backward);
  }
  report.stats = m.snapshot();
  return report;
}

ValidationReport validate_general(Machine& m, TapeId doc, const Schema& schema, ValidationOptions opt) {
  EncodeReport enc = encode_streaming(m, doc, true);
  return validate_fcns_twopass(m, enc.output, schema, std::move(opt));
}

Verdict validate_oracle(const Tree& tree, const Schema& schema) {
  if (tree.nodes.empty()) throw Error(ErrorCode::EmptyInput, "empty tree");
  const auto& root = tree.nodes[tree.root];
  if (root.label != schema.root()) return Verdict::invalid(1, root.label);
  // Preorder walk; token index of each opening tag.
  std::vector<std::pair<std::uint32_t, std::size_t>> stack{{tree.root, 0}};
  std::size_t token = 0;
  std::vector<Label> word;
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& n = tree.nodes[node];
    if (next == 0) {
      ++token;
      word.clear();
      for (std::uint32_t c : n.children) word.push_back(tree.nodes[c].label);
      if (!schema.check(n.label, word)) return Verdict::invalid(token, n.label);
    }
    if (next < n.children.size()) {
      std::uint32_t child = n.children[next++];
      stack.emplace_back(child, 0);
    } else {
      ++token;
      stack.pop_back();
    }
  }
  return Verdict::ok();
}

}  // namespace xmlstream
