#include "tape_sort.hpp"
#include "xmlstream/binary_validator.hpp"
#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"

namespace xmlstream {

void extract_openings(Machine& m, TapeId doc, TapeId out, bool with_separators) {
  ScopedCells registers(m.meter(), 3);  // depth, position, previous-tag kind
  ShapeGuard guard(true, TreeShape::Any);
  ReadPass in = m.read(doc);
  WritePass w = m.append(out);
  std::int32_t d = 0;
  std::size_t n = 0;
  bool prev_opening = true;
  while (!in.at_end()) {
    Tag x = in.next();
    ++n;
    if (!x.is_opening() && !x.is_closing()) {
      throw Error(ErrorCode::MalformedToken, "unexpected " + token_text(x) + " at token " + std::to_string(n));
    }
    guard.step(x, x.is_opening(), n);
    if (x.is_opening()) {
      Tag t = Tag::opening(x.label, prev_opening ? Variant::Left : Variant::Right);
      t.depth = d++;
      t.pos = static_cast<std::int64_t>(n);
      w.write(t);
      prev_opening = true;
    } else {
      --d;
      if (with_separators && !prev_opening) w.write(Tag::separator(d + 1));
      prev_opening = false;
    }
  }
  guard.finish(n);
  if (with_separators) w.write(Tag::separator(0));
}

namespace {

struct ClosingOrder {
  static constexpr bool counters = true;
  Tag convert(const Tag& t) const {
    Tag c = t;
    if (c.is_opening()) c.kind = TagKind::Closing;
    return c;
  }
  // The left head is never a separator here: the flush consumed them all.
  bool take_left(const Tag& l, const Tag& r) const {
    return r.is_separator() ? l.depth >= r.depth : l.depth > r.depth;
  }
};

}  // namespace

SortProfile sort_closings(Machine& m, TapeId data, TapeId scratch_a, TapeId scratch_b,
                          const LevelObserver& observer) {
  SortProfile prof;
  prof.length = m.length(data);
  auto counts = detail::tape_merge_sort(m, data, scratch_a, scratch_b, ClosingOrder{}, observer);
  prof.levels = counts.levels;
  prof.separators = counts.separators;
  return prof;
}

void merge_open_close(Machine& m, TapeId openings, TapeId closings, TapeId out, bool bot_form) {
  ScopedCells registers(m.meter(), 3);  // last emitted tag and mode
  ReadPass po = m.read(openings);
  ReadPass pc = m.read(closings);
  WritePass w = m.append(out);
  Lookahead O(po, m.meter());
  Lookahead C(pc, m.meter());

  auto desync = [](const std::string& why) { return Error(ErrorCode::StreamDesync, why); };
  auto emit = [&](const Tag& t) {
    Variant v = bot_form ? Variant::None : t.variant;
    w.write(t.is_opening() ? Tag::opening(t.label, v) : Tag::closing(t.label, v));
  };
  auto pad = [&] {
    if (!bot_form) return;
    w.write(Tag::opening(Label::bottom()));
    w.write(Tag::closing(Label::bottom()));
  };
  auto next_closing = [&]() {
    if (C.at_end() || !C.peek()->is_closing()) throw desync("expected a closing tag");
    return C.take();
  };

  if (O.at_end()) throw desync("no opening tags");
  enum class Mode { Opened, RightClosed, LeftClosed };
  Tag last = O.take();
  emit(last);
  Mode mode = Mode::Opened;
  while (true) {
    if (mode == Mode::Opened) {
      const Tag* o = O.peek();
      if (o && o->pos == last.pos + 1) {
        last = O.take();
        emit(last);
        continue;
      }
      if (o && o->depth == last.depth) {
        pad();
        last = O.take();
        emit(last);
        continue;
      }
      Tag c = next_closing();
      if (c.pos != last.pos) throw desync("leaf closing out of order at pos " + std::to_string(last.pos));
      emit(c);
      last = c;
    } else if (mode == Mode::RightClosed) {
      last = next_closing();
      emit(last);
    } else {
      if (C.at_end() || !C.peek()->is_separator()) throw desync("missing family separator");
      C.take();
      if (last.depth == 0) break;
      const Tag* o = O.peek();
      if (o && o->depth == last.depth - 1) {
        last = O.take();
        emit(last);
        mode = Mode::Opened;
        continue;
      }
      pad();
      last = next_closing();
      emit(last);
    }
    mode = last.variant == Variant::Right ? Mode::RightClosed : Mode::LeftClosed;
  }
  if (!O.at_end() || !C.at_end()) throw desync("tags left over after the root closed");
}

EncodeReport encode_streaming(Machine& m, TapeId doc, bool bot_form, const LevelObserver& observer) {
  TapeId aux1 = m.auxiliary(1);
  TapeId aux2 = m.auxiliary(2);
  TapeId aux3 = m.auxiliary(3);
  EncodeReport report;
  extract_openings(m, doc, aux1, true);
  report.sort = sort_closings(m, aux1, aux2, aux3, observer);
  extract_openings(m, doc, aux2, false);
  merge_open_close(m, aux2, aux1, aux3, bot_form);
  report.output = aux3;
  report.stats = m.snapshot();
  return report;
}

}  // namespace xmlstream
