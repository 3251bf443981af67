#include "xmlstream/binary_validator.hpp"

#include <cmath>
#include <sstream>

#include "xmlstream/error.hpp"

namespace xmlstream {

std::string Verdict::to_string() const {
  if (valid) return "valid";
  std::ostringstream out;
  out << "invalid " << token_index << ' ' << (parent.empty() ? std::string("?") : parent.str());
  return out.str();
}

std::size_t window_for(std::size_t n) {
  if (n <= 1) return 1;
  double v = std::sqrt(static_cast<double>(n) * std::log2(static_cast<double>(n)));
  auto k = static_cast<std::size_t>(std::ceil(v - 1e-9));
  return k < 1 ? 1 : k;
}

namespace {

std::vector<Label> children_word(const Tag* left, const Tag* right) {
  std::vector<Label> word;
  if (left && !left->label.is_bottom()) word.push_back(left->label);
  if (right && !right->label.is_bottom()) word.push_back(right->label);
  return word;
}

}  // namespace

CheckFn binary_dtd_check(const Schema& schema) {
  return [&schema](const Tag& parent, const Tag* left, const Tag* right) {
    auto word = children_word(left, right);
    return schema.check(parent.label, word);
  };
}

CheckFn mirrored(CheckFn check) {
  return [check = std::move(check)](const Tag& parent, const Tag* left, const Tag* right) {
    return check(parent, right, left);
  };
}

void ShapeGuard::step(const Tag& t, bool as_opening, std::size_t index) {
  if (!enabled_) return;
  auto at = [index] { return " at token " + std::to_string(index); };
  if (as_opening) {
    if (open_.empty() && rooted_) throw Error(ErrorCode::NotWellFormed, "second root" + at());
    if (!open_.empty() && ++open_.back().children > 2 && shape_ != TreeShape::Any) {
      throw Error(ErrorCode::NotBinary, "third child under '" + open_.back().label.str() + "'" + at());
    }
    open_.push_back({t.label, 0});
    rooted_ = true;
    return;
  }
  if (open_.empty()) throw Error(ErrorCode::NotWellFormed, "unmatched closing tag" + at());
  const Frame& f = open_.back();
  if (f.label != t.label) {
    throw Error(ErrorCode::NotWellFormed, "closing '" + t.label.str() + "' does not match '" + f.label.str() + "'" + at());
  }
  if (shape_ == TreeShape::FullBinary && f.children == 1) {
    throw Error(ErrorCode::NotFullBinary, "node '" + f.label.str() + "' has one child" + at());
  }
  open_.pop_back();
}

void ShapeGuard::finish(std::size_t index) const {
  if (!enabled_) return;
  if (!rooted_) throw Error(ErrorCode::EmptyInput, "empty document");
  if (!open_.empty()) {
    throw Error(ErrorCode::NotWellFormed, "unclosed tag '" + open_.back().label.str() + "' at end, token " +
                                              std::to_string(index));
  }
}

namespace {

void require_tag(const Tag& t, std::size_t index) {
  if (t.is_opening() || t.is_closing()) return;
  throw Error(ErrorCode::MalformedToken, "unexpected " + token_text(t) + " at token " + std::to_string(index));
}

class Recorder {
 public:
  Recorder(const ValidationOptions& opt, ValidationReport& report) : opt_(opt), report_(report) {}

  void note(CheckEvent::Kind kind, std::size_t parent_index, std::size_t at, Label parent, bool ok) {
    if (opt_.record_trace) report_.checks.push_back({kind, parent_index, ok});
    if (ok) return;
    fail(at, parent);
  }

  void fail(std::size_t at, Label parent) {
    Verdict v = Verdict::invalid(at, parent);
    if (report_.verdict.valid) report_.verdict = v;
    report_.violations.push_back(v);
    if (!opt_.collect_all) stop_ = true;
  }

  bool stopped() const noexcept { return stop_; }

 private:
  const ValidationOptions& opt_;
  ValidationReport& report_;
  bool stop_ = false;
};

// One-pass stack item. Openings keep depth -1.
struct Item1 {
  Tag tag;
  std::int32_t depth;
  std::size_t index;
  bool left;  // closing followed by an opening
};

class OnePass {
 public:
  OnePass(Machine& m, TapeId doc, const CheckFn& check, const ValidationOptions& opt, bool adaptive)
      : m_(m), doc_(doc), check_(check), opt_(opt), adaptive_(adaptive), stack_(m.meter()) {}

  ValidationReport run() {
    ValidationReport report;
    Recorder rec(opt_, report);
    OnePassProfile& prof = report.onepass;
    ScopedCells registers(m_.meter(), 5);  // d, K, n, opening count, depth guess

    const std::size_t n_nodes = m_.node_count(doc_);
    std::size_t guess = 4;
    std::size_t K = adaptive_ ? window_for(guess) : opt_.K.value_or(window_for(n_nodes));
    if (K == 0) K = 1;
    prof.K = K;
    prof.depth_guess = adaptive_ ? guess : 0;

    ShapeGuard guard(opt_.guard_shape, opt_.shape);
    ReadPass pass = m_.read(doc_);
    Lookahead in(pass, m_.meter());
    std::int32_t d = 0;
    std::size_t n = 0;

    while (!in.at_end() && !rec.stopped()) {
      Tag x = in.take();
      ++n;
      require_tag(x, n);
      const Tag* y = in.peek();
      guard.step(x, x.is_opening(), n);

      if (n == 1 && opt_.root && x.label != *opt_.root) {
        rec.fail(n, x.label);
        if (rec.stopped()) break;
      }

      if (x.is_opening()) {
        if (y && y->is_closing()) {
          rec.note(CheckEvent::Kind::Leaf, n, n, x.label, check_(x, nullptr, nullptr));
        }
        std::size_t sz = stack_.size();
        if (sz >= 2 && stack_[sz - 1].tag.is_closing() && stack_[sz - 2].tag.is_opening() &&
            stack_[sz - 1].depth == d) {
          const Item1& a = stack_[sz - 2];
          const Item1& b = stack_[sz - 1];
          rec.note(CheckEvent::Kind::TopDown, a.index, n, a.tag.label, check_(a.tag, &b.tag, &x));
          pop();
        }
        if (openings_ >= K) evict(prof);
        ++d;
        if (adaptive_ && static_cast<std::size_t>(d) > guess) {
          while (static_cast<std::size_t>(d) > guess) guess *= 2;
          K = window_for(guess);
          ++prof.doublings;
          prof.depth_guess = guess;
          prof.K = K;
        }
        push({x, -1, n, false});
      } else {
        --d;
        std::size_t sz = stack_.size();
        if (sz >= 2 && stack_[sz - 1].tag.is_closing() && stack_[sz - 2].tag.is_closing() &&
            stack_[sz - 1].depth == d + 1 && stack_[sz - 2].depth == d + 1) {
          const Item1& a = stack_[sz - 2];
          const Item1& b = stack_[sz - 1];
          rec.note(CheckEvent::Kind::BottomUp, n, n, x.label, check_(x, &a.tag, &b.tag));
          pop();
          pop();
        } else if (sz >= 1 && stack_[sz - 1].tag.is_closing() && stack_[sz - 1].depth == d + 1) {
          pop();
        }
        if (!stack_.empty() && stack_.back().tag.is_opening()) {
          if (stack_.back().tag.label != x.label) {
            throw Error(ErrorCode::StreamDesync, "stack opening '" + stack_.back().tag.label.str() +
                                                     "' meets closing '" + x.label.str() + "'");
          }
          pop();
        }
        push({x, d, n, y && y->is_opening()});
      }
      observe(prof, K);
    }
    if (!rec.stopped()) {
      guard.finish(n);
      if (opt_.guard_shape && stack_.size() > 1) {
        throw Error(ErrorCode::StreamDesync, std::to_string(stack_.size() - 1) + " unverified stack items at end");
      }
    }
    pass.close();
    report.stats = m_.snapshot();
    return report;
  }

 private:
  void push(Item1 item) {
    if (item.tag.is_opening()) {
      ++openings_;
    } else if (item.left) {
      ++lefts_;
    } else {
      ++rights_;
    }
    stack_.push_back(item);
  }

  void account_removed(const Item1& item) {
    if (item.tag.is_opening()) {
      --openings_;
    } else if (item.left) {
      --lefts_;
    } else {
      --rights_;
    }
  }

  void pop() {
    account_removed(stack_.back());
    stack_.pop_back();
  }

  void evict(OnePassProfile& prof) {
    for (std::size_t i = 0; i < stack_.size(); ++i) {
      if (stack_[i].tag.is_opening()) {
        account_removed(stack_[i]);
        stack_.erase(i);
        ++prof.evictions;
        return;
      }
    }
  }

  void observe(OnePassProfile& prof, std::size_t K) {
    prof.max_openings = std::max(prof.max_openings, openings_);
    prof.max_left_closings = std::max(prof.max_left_closings, lefts_);
    prof.max_right_closings = std::max(prof.max_right_closings, rights_);
    prof.max_stack = std::max(prof.max_stack, stack_.size());
    if (opt_.check_invariants) check_shape(prof, K);
  }

  // ā* b* (ε | c̄ | d̄ ē), increasing positions, 2K spacing of retained left closings.
  void check_shape(OnePassProfile& prof, std::size_t K) {
    const auto& s = stack_.items();
    std::size_t i = 0;
    while (i < s.size() && s[i].tag.is_closing() && s[i].left) ++i;
    std::size_t lead = i;
    while (i < s.size() && s[i].tag.is_opening()) ++i;
    std::size_t tail = s.size() - i;
    bool ok = true;
    if (tail == 1) {
      ok = s[i].tag.is_closing();
    } else if (tail == 2) {
      ok = s[i].tag.is_closing() && s[i].left && s[i + 1].tag.is_closing() && !s[i + 1].left;
    } else if (tail > 2) {
      ok = false;
    }
    // A trailing lone left closing belongs to the tail; the lead may absorb it when no openings follow.
    if (!ok && lead == s.size()) ok = true;
    for (std::size_t j = 1; j < s.size(); ++j) {
      if (s[j - 1].index >= s[j].index) ok = false;
    }
    if (!ok) prof.shape_ok = false;

    if (adaptive_) return;
    std::vector<std::size_t> lefts;
    for (const auto& it : s) {
      if (it.tag.is_closing() && it.left) lefts.push_back(it.index);
    }
    for (std::size_t j = 1; j + 1 < lefts.size(); ++j) {
      if (lefts[j] < lefts[j - 1] + 2 * K) prof.spacing_ok = false;
    }
  }

  Machine& m_;
  TapeId doc_;
  const CheckFn& check_;
  const ValidationOptions& opt_;
  bool adaptive_;
  MeteredVector<Item1> stack_;
  std::size_t openings_ = 0;
  std::size_t lefts_ = 0;
  std::size_t rights_ = 0;
};

class CheckVisitor : public PairVisitor {
 public:
  explicit CheckVisitor(const CheckFn& check) : check_(check) {}
  bool leaf(const Tag& node) override { return check_(node, nullptr, nullptr); }
  bool pair(const Tag& parent, const PendingPair& item) override {
    return check_(parent, &item.left_closing, &item.right_opening);
  }

 private:
  const CheckFn& check_;
};

}  // namespace

ValidationReport validate_onepass(Machine& m, TapeId doc, const CheckFn& check, const ValidationOptions& opt) {
  return OnePass(m, doc, check, opt, false).run();
}

ValidationReport validate_onepass_adaptive(Machine& m, TapeId doc, const CheckFn& check,
                                           const ValidationOptions& opt) {
  return OnePass(m, doc, check, opt, true).run();
}

void run_left_heavy(Machine& m, TapeId doc, StreamView view, PairVisitor& visitor, const ValidationOptions& opt,
                    ValidationReport& report, LeftHeavyProfile& profile) {
  Recorder rec(opt, report);
  ScopedCells registers(m.meter(), 2);  // l, n
  MeteredVector<PendingPair> stack(m.meter());
  ShapeGuard guard(opt.guard_shape, opt.shape);

  const std::size_t len = m.length(doc);
  auto orig = [&](std::size_t k) { return view.mirrored ? len + 1 - k : k; };
  auto is_open = [&](const Tag& t) { return view.swap_roles ? t.is_closing() : t.is_opening(); };

  ReadPass pass = m.read(doc, view.direction);
  Lookahead in(pass, m.meter());
  std::int32_t l = 0;
  std::size_t n = 0;

  while (!in.at_end() && !rec.stopped()) {
    Tag x = in.take();
    ++n;
    require_tag(x, orig(n));
    const Tag* y = in.peek();
    const bool x_open = is_open(x);
    guard.step(x, x_open, orig(n));

    if (x_open) {
      if (!view.mirrored && n == 1 && opt.root && x.label != *opt.root) {
        rec.fail(orig(n), x.label);
        if (rec.stopped()) break;
      }
      ++l;
      const bool y_close = y && !is_open(*y);
      if (y_close) {
        ++profile.leaf_checks;
        rec.note(CheckEvent::Kind::Leaf, orig(n), orig(n), x.label, visitor.leaf(x));
      }
      visitor.perceived_opening(x, y, y_close, stack.empty() ? nullptr : &stack.back());
    } else {
      --l;
      if (!stack.empty() && stack.back().depth == l + 1) {
        PendingPair item = stack.back();
        stack.pop_back();
        ++profile.pair_checks;
        rec.note(CheckEvent::Kind::Pair, orig(n), orig(n), x.label, visitor.pair(x, item));
      }
      if (y && is_open(*y)) {
        stack.push_back({x, *y, l, static_cast<std::int64_t>(n), orig(n), orig(n + 1), -1});
        ++profile.pushes;
      }
    }

    // Cleaning: drop s2 whenever n - n2 > n2 - n1 for the item s1 right below it.
    for (std::size_t i = 1; i < stack.size();) {
      auto n1 = stack[i - 1].position;
      auto n2 = stack[i].position;
      if (static_cast<std::int64_t>(n) - n2 > n2 - n1) {
        stack.erase(i);
        ++profile.suppressed;
      } else {
        ++i;
      }
    }
    profile.max_stack = std::max(profile.max_stack, stack.size());
    if (opt.check_invariants) {
      for (std::size_t i = 1; i < stack.size(); ++i) {
        if (stack[i - 1].position >= stack[i].position || stack[i - 1].depth >= stack[i].depth) {
          profile.order_ok = false;
        }
      }
    }
  }
  if (!rec.stopped()) guard.finish(orig(n));
}

ValidationReport validate_leftheavy(Machine& m, TapeId doc, StreamView view, const CheckFn& check,
                                    const ValidationOptions& opt) {
  ValidationReport report;
  CheckVisitor visitor(check);
  run_left_heavy(m, doc, view, visitor, opt, report, report.forward);
  report.stats = m.snapshot();
  return report;
}

ValidationReport validate_twopass(Machine& m, TapeId doc, const CheckFn& forward_check,
                                  const CheckFn& backward_check, const ValidationOptions& opt) {
  ValidationReport report;
  CheckVisitor fwd(forward_check);
  run_left_heavy(m, doc, StreamView::forward(), fwd, opt, report, report.forward);
  if (report.verdict.valid || opt.collect_all) {
    CheckVisitor bwd(backward_check);
    ValidationOptions back = opt;
    back.root.reset();
    run_left_heavy(m, doc, StreamView::reversed(), bwd, back, report, report.backward);
  }
  report.stats = m.snapshot();
  return report;
}

ValidationReport validate_onepass(Machine& m, TapeId doc, const Schema& schema, ValidationOptions opt) {
  if (!opt.root) opt.root = schema.root();
  return validate_onepass(m, doc, binary_dtd_check(schema), opt);
}

ValidationReport validate_twopass(Machine& m, TapeId doc, const Schema& schema, ValidationOptions opt) {
  if (!opt.root) opt.root = schema.root();
  auto check = binary_dtd_check(schema);
  return validate_twopass(m, doc, check, mirrored(check), opt);
}

}  // namespace xmlstream
