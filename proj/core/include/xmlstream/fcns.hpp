#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "xmlstream/document.hpp"
#include "xmlstream/tape.hpp"

namespace xmlstream {

// ---- offline forms ----

// XML(FCNS(t)) with .L/.R variants.
Doc encode_offline(const Tree& tree);
// FCNS form -> full binary form with _ leaves in the missing slot of one-child nodes.
Doc to_bot_form(const Doc& fcns);
Doc from_bot_form(const Doc& bot);
// Offline decoder with unbounded memory.
Doc decode_offline(const Doc& fcns);

// ---- streaming encoder ----

struct SortProfile {
  std::size_t length = 0;  // cells sorted, separators included
  std::size_t levels = 0;
  std::size_t separators = 0;
};

// Harness hook, called after every merge level with the block length just produced.
using LevelObserver = std::function<void(std::size_t block, std::span<const Tag> data)>;

// Opening tags of XML(t) in order, annotated with variant, depth and pos. With
// separators, a separator of the just-closed depth follows every closing that is
// followed by a closing, plus one at the end of the document.
void extract_openings(Machine& m, TapeId doc, TapeId out, bool with_separators);

// Sorts `data` in place into the closing order of XML(FCNS(t)), separators kept.
SortProfile sort_closings(Machine& m, TapeId data, TapeId scratch_a, TapeId scratch_b,
                          const LevelObserver& observer = {});

// Interleaves annotated openings with sorted closings (separators included).
void merge_open_close(Machine& m, TapeId openings, TapeId closings, TapeId out, bool bot_form = false);

struct EncodeReport {
  TapeId output = 0;
  RunStats stats;
  SortProfile sort;
};

// Tapes aux1..aux3; output on aux3.
EncodeReport encode_streaming(Machine& m, TapeId doc, bool bot_form = false, const LevelObserver& observer = {});

// ---- streaming decoders ----

struct DecodeProfile {
  std::size_t block_size = 0;
  std::size_t blocks = 0;
  std::size_t criticals = 0;
  std::size_t max_criticals_per_block = 0;
  std::size_t dummies = 0;
  std::size_t recovered_forward = 0;
  std::size_t recovered_backward = 0;
  std::size_t duplicates = 0;
  std::size_t max_stack = 0;
};

struct DecodeReport {
  TapeId output = 0;
  RunStats stats;
  DecodeProfile profile;
};

// One input pass, one append pass and one overwrite pass on the tape "output".
DecodeReport decode_sqrt(Machine& m, TapeId fcns, std::size_t block_size = 0);
// Tapes aux1..aux3; output on aux3.
DecodeReport decode_logpass(Machine& m, TapeId fcns);

}  // namespace xmlstream
