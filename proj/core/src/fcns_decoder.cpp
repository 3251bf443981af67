#include <algorithm>

#include "tape_sort.hpp"
#include "xmlstream/binary_validator.hpp"
#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"

namespace xmlstream {

namespace {

void require_fcns_tag(const Tag& x, std::size_t n) {
  if ((!x.is_opening() && !x.is_closing()) || x.variant == Variant::None) {
    throw Error(ErrorCode::MalformedToken, "expected an FCNS tag at token " + std::to_string(n) + ", got " +
                                               token_text(x));
  }
}

bool opens_left(const Tag* y) { return y && y->is_opening() && y->variant == Variant::Left; }

struct Slot {
  std::size_t at;  // buffer slot or output position
  std::int32_t depth;
};

struct Recovered {
  std::size_t at;
  Label label;
};

struct OpenNode {
  Label label;
  std::int32_t depth;
};

}  // namespace

DecodeReport decode_sqrt(Machine& m, TapeId fcns, std::size_t block_size) {
  DecodeReport report;
  DecodeProfile& prof = report.profile;
  const std::size_t K = block_size ? block_size : window_for(m.node_count(fcns));
  prof.block_size = K;
  TapeId out = m.find("output").value_or(0);
  if (!m.find("output")) out = m.create_tape("output", TapeKind::Output);

  ResourceMeter& meter = m.meter();
  ScopedCells registers(meter, 5);  // depth, block fill, output length, block count, K
  MeteredVector<Tag> buffer(meter);
  MeteredVector<OpenNode> local(meter);
  MeteredVector<Slot> pending(meter);
  MeteredVector<Slot> critical(meter);
  MeteredVector<Recovered> recovered(meter);
  ShapeGuard guard(true, TreeShape::Binary);

  std::size_t out_len = 0;
  {
    ReadPass pass = m.read(fcns);
    Lookahead in(pass, meter);
    WritePass w = m.append(out);
    std::int32_t cur = 0;
    std::size_t n = 0;
    std::size_t fill = 0;

    auto flush = [&] {
      if (pending.size() > 1) {
        throw Error(ErrorCode::CriticalOverflow, std::to_string(pending.size()) + " critical tags in block " +
                                                     std::to_string(prof.blocks + 1));
      }
      prof.max_criticals_per_block = std::max(prof.max_criticals_per_block, pending.size());
      for (const Slot& s : pending.items()) critical.push_back({out_len + s.at, s.depth});
      prof.criticals += pending.size();
      for (const Tag& t : buffer.items()) {
        w.write(t);
        ++out_len;
      }
      buffer.clear();
      local.clear();
      pending.clear();
      fill = 0;
      ++prof.blocks;
    };

    while (!in.at_end()) {
      Tag x = in.take();
      ++n;
      require_fcns_tag(x, n);
      guard.step(x, x.is_opening(), n);
      const Tag* y = in.peek();
      if (x.is_opening()) {
        local.push_back({x.label, cur++});
        buffer.push_back(Tag::opening(x.label));
        if (!opens_left(y)) buffer.push_back(Tag::closing(x.label));
      } else {
        std::int32_t d = --cur;
        if (!local.empty()) {
          if (local.back().depth != d) throw Error(ErrorCode::StreamDesync, "block stack out of step");
          local.pop_back();
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
          if (pending[i].depth == d + 1) {
            buffer[pending[i].at] = Tag::closing(x.label);
            pending.erase(i);
            break;
          }
        }
        for (std::size_t i = 0; i < critical.size(); ++i) {
          if (critical[i].depth == d + 1) {
            recovered.push_back({critical[i].at, x.label});
            critical.erase(i);
            break;
          }
        }
        if (x.variant == Variant::Left && d > 0) {
          if (!local.empty()) {
            buffer.push_back(Tag::closing(local.back().label));
          } else {
            pending.push_back({buffer.size(), d});
            buffer.push_back(Tag::dummy());
          }
        }
      }
      if (++fill == K || in.at_end()) flush();
    }
    guard.finish(n);
    if (!critical.empty()) throw Error(ErrorCode::UnfilledDummy, "critical tag without parent closing");
  }

  prof.dummies = recovered.size();
  std::vector<Recovered> order(recovered.items());
  std::sort(order.begin(), order.end(), [](const Recovered& a, const Recovered& b) { return a.at < b.at; });
  {
    OverwritePass ow = m.overwrite(out);
    std::size_t next = 0;
    for (std::size_t pos = 0; pos < out_len; ++pos) {
      if (next < order.size() && order[next].at == pos) {
        ow.write(Tag::closing(order[next++].label));
      } else {
        ow.skip();
      }
    }
  }
  report.output = out;
  report.stats = m.snapshot();
  return report;
}

namespace {

// Writes the parent label of every recovered pair, keyed by the original
// index of the left child's closing tag.
class RecoverParents : public PairVisitor {
 public:
  RecoverParents(WritePass& w, bool backward) : w_(w), backward_(backward) {}
  bool leaf(const Tag&) override { return true; }
  bool pair(const Tag& parent, const PendingPair& item) override {
    Tag t = Tag::closing(parent.label);
    t.pos = static_cast<std::int64_t>(backward_ ? item.right_index : item.left_index);
    w_.write(t);
    ++count;
    return true;
  }
  std::size_t count = 0;

 private:
  WritePass& w_;
  bool backward_;
};

struct KeyOrder {
  static constexpr bool counters = false;
  Tag convert(const Tag& t) const { return t; }
  bool take_left(const Tag& l, const Tag& r) const { return l.pos <= r.pos; }
};

}  // namespace

DecodeReport decode_logpass(Machine& m, TapeId fcns) {
  DecodeReport report;
  DecodeProfile& prof = report.profile;
  TapeId aux1 = m.auxiliary(1);
  TapeId aux2 = m.auxiliary(2);
  TapeId aux3 = m.auxiliary(3);
  ResourceMeter& meter = m.meter();

  ValidationOptions opt;
  opt.shape = TreeShape::Binary;
  {
    ValidationReport scratch;
    LeftHeavyProfile lh;
    WritePass w = m.append(aux1);
    RecoverParents visitor(w, false);
    run_left_heavy(m, fcns, StreamView::forward(), visitor, opt, scratch, lh);
    prof.recovered_forward = visitor.count;
    prof.max_stack = lh.max_stack;
  }
  {
    ValidationReport scratch;
    LeftHeavyProfile lh;
    WritePass w = m.append(aux1);
    for (std::size_t i = m.length(aux1); i > 0; --i) w.skip();
    RecoverParents visitor(w, true);
    run_left_heavy(m, fcns, StreamView::reversed(), visitor, opt, scratch, lh);
    prof.recovered_backward = visitor.count;
    prof.max_stack = std::max(prof.max_stack, lh.max_stack);
  }
  detail::tape_merge_sort(m, aux1, aux2, aux3, KeyOrder{}, {});

  {
    ScopedCells registers(meter, 1);
    ReadPass pass = m.read(fcns);
    Lookahead in(pass, meter);
    WritePass w = m.append(aux2);
    std::size_t n = 0;
    while (!in.at_end()) {
      Tag x = in.take();
      require_fcns_tag(x, ++n);
      const Tag* y = in.peek();
      if (x.is_opening()) {
        w.write(Tag::opening(x.label));
        if (!opens_left(y)) w.write(Tag::closing(x.label));
      } else if (x.variant == Variant::Left && y) {
        if (y->is_closing()) {
          w.write(Tag::closing(y->label));
        } else {
          w.write(Tag::dummy());
          ++prof.dummies;
        }
      }
    }
  }

  {
    ScopedCells registers(meter, 1);
    ReadPass body = m.read(aux2);
    ReadPass keys = m.read(aux1);
    Lookahead rec(keys, meter);
    WritePass w = m.append(aux3);
    while (!body.at_end()) {
      Tag t = body.next();
      if (!t.is_dummy()) {
        w.write(t);
        continue;
      }
      if (rec.at_end()) throw Error(ErrorCode::UnfilledDummy, "more dummies than recovered parents");
      Tag r = rec.take();
      while (!rec.at_end() && rec.peek()->pos == r.pos) {
        if (rec.peek()->label != r.label) {
          throw Error(ErrorCode::StreamDesync, "passes disagree on the parent at key " + std::to_string(r.pos));
        }
        rec.take();
        ++prof.duplicates;
      }
      w.write(Tag::closing(r.label));
    }
    if (!rec.at_end()) throw Error(ErrorCode::UnfilledDummy, "recovered parents left after the last dummy");
  }
  report.output = aux3;
  report.stats = m.snapshot();
  return report;
}

}  // namespace xmlstream
