#pragma once

// Three-tape block merge sort shared by the encoder and the log-pass decoder.

#include <algorithm>

#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"
#include "xmlstream/tape.hpp"

namespace xmlstream::detail {

struct SortCounts {
  std::size_t levels = 0;
  std::size_t separators = 0;  // seen while copying the first level
};

// Policy interface:
//   static constexpr bool counters;          write separator counts before even blocks
//   Tag convert(const Tag&) const;           applied while copying
//   bool take_left(const Tag&, const Tag&) const;

template <class Policy>
SortCounts tape_merge_sort(Machine& m, TapeId data, TapeId odd, TapeId even, const Policy& policy,
                            const LevelObserver& observer) {
  const std::size_t L = m.length(data);
  ScopedCells registers(m.meter(), 6);  // block, index, two block lengths, counter, level
  SortCounts counts;
  for (std::size_t b = 1; b < L; b *= 2, ++counts.levels) {
    {
      ReadPass in = m.read(data);
      WritePass wa = m.append(odd);
      WritePass wb = m.append(even);
      std::size_t idx = 0;
      while (idx < L) {
        std::int64_t seps = 0;
        for (std::size_t k = std::min(b, L - idx); k > 0; --k, ++idx) {
          Tag t = policy.convert(in.next());
          if (t.is_separator()) ++seps;
          wa.write(t);
        }
        if constexpr (Policy::counters) wb.write(Tag::counter(seps));
        for (std::size_t k = std::min(b, L - idx); k > 0; --k, ++idx) {
          Tag t = policy.convert(in.next());
          if (t.is_separator()) ++seps;
          wb.write(t);
        }
        if (b == 1) counts.separators += static_cast<std::size_t>(seps);
      }
    }
    {
      ReadPass ra = m.read(odd);
      ReadPass rb = m.read(even);
      WritePass out = m.append(data);
      ScopedCells heads(m.meter(), 2);
      std::size_t idx = 0;
      while (idx < L) {
        std::size_t la = std::min(b, L - idx);
        std::size_t lb = std::min(b, L - idx - la);
        idx += la + lb;
        if constexpr (Policy::counters) {
          Tag c = rb.next();
          if (c.kind != TagKind::Counter) throw Error(ErrorCode::StreamDesync, "missing block counter");
          for (std::int64_t seps = c.pos; seps > 0; --la) {
            Tag t = ra.next();
            if (t.is_separator()) --seps;
            out.write(t);
          }
        }
        Tag ha;
        Tag hb;
        bool has_a = la > 0;
        bool has_b = lb > 0;
        if (has_a) ha = ra.next(), --la;
        if (has_b) hb = rb.next(), --lb;
        while (has_a || has_b) {
          bool left = !has_b || (has_a && policy.take_left(ha, hb));
          if (left) {
            out.write(ha);
            has_a = la > 0;
            if (has_a) ha = ra.next(), --la;
          } else {
            out.write(hb);
            has_b = lb > 0;
            if (has_b) hb = rb.next(), --lb;
          }
        }
      }
    }
    if (observer) observer(std::min(2 * b, L), m.contents(data));
  }
  return counts;
}

}  // namespace xmlstream::detail
