#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "xmlstream/schema.hpp"
#include "xmlstream/tape.hpp"
#include "xmlstream/verdict.hpp"

namespace xmlstream {

// check(parent, left, right): left/right are the children's tags as seen by the
// algorithm (both null for a leaf). Returns false when the parent is invalid.
using CheckFn = std::function<bool(const Tag& parent, const Tag* left, const Tag* right)>;

// Children word "left right" (or the empty word for leaves) against D(parent).
CheckFn binary_dtd_check(const Schema& schema);
// Same check with the two children swapped, for role-swapped backward streams.
CheckFn mirrored(CheckFn check);

enum class TreeShape : std::uint8_t { Any, Binary, FullBinary };

struct ValidationOptions {
  std::optional<std::size_t> K;  // one-pass window; default ceil(sqrt(N log2 N))
  std::optional<Label> root;     // expected root label
  bool collect_all = false;
  bool record_trace = false;
  bool check_invariants = false;  // stack-shape assertions (costly; off for metered runs)
  bool guard_shape = true;
  TreeShape shape = TreeShape::FullBinary;
};

struct CheckEvent {
  enum class Kind : std::uint8_t { Leaf, TopDown, BottomUp, Pair };
  Kind kind;
  std::size_t parent_index;  // original stream index of a tag of the checked node
  bool ok;
};

struct OnePassProfile {
  std::size_t K = 0;
  std::size_t max_openings = 0;
  std::size_t max_left_closings = 0;
  std::size_t max_right_closings = 0;
  std::size_t max_stack = 0;
  std::size_t depth_guess = 0;
  std::size_t doublings = 0;
  std::size_t evictions = 0;
  bool shape_ok = true;    // item sequence matched the expected shape at every step
  bool spacing_ok = true;  // retained left closings at least 2K apart
};

struct LeftHeavyProfile {
  std::size_t max_stack = 0;
  std::size_t pushes = 0;
  std::size_t suppressed = 0;
  std::size_t pair_checks = 0;
  std::size_t leaf_checks = 0;
  bool order_ok = true;  // positions and depths strictly increase bottom to top
};

struct ValidationReport {
  Verdict verdict;
  std::vector<Verdict> violations;
  std::vector<CheckEvent> checks;
  RunStats stats;
  OnePassProfile onepass;
  LeftHeavyProfile forward;
  LeftHeavyProfile backward;
};

// Window size ceil(sqrt(n log2 n)), at least 1.
std::size_t window_for(std::size_t n);

ValidationReport validate_onepass(Machine& m, TapeId doc, const CheckFn& check,
                                  const ValidationOptions& opt = {});
ValidationReport validate_onepass_adaptive(Machine& m, TapeId doc, const CheckFn& check,
                                           const ValidationOptions& opt = {});

// Left-heavy subroutine.

struct StreamView {
  Direction direction = Direction::Forward;
  bool swap_roles = false;  // openings read as closings and vice versa
  bool mirrored = false;    // stream order is the reverse of the original document

  static StreamView forward() { return {}; }
  // Backward pass over the original tape.
  static StreamView reversed() { return {Direction::Backward, true, true}; }
  // Forward pass over a tape that already holds the document in reverse order.
  static StreamView prereversed() { return {Direction::Forward, true, true}; }
};

struct PendingPair {
  Tag left_closing;
  Tag right_opening;
  std::int32_t depth = 0;
  std::int64_t position = 0;       // reading position of left_closing
  std::size_t left_index = 0;      // original stream index of left_closing
  std::size_t right_index = 0;     // original stream index of right_opening
  std::int32_t recovered_state = -1;
};

class PairVisitor {
 public:
  virtual ~PairVisitor() = default;
  virtual bool leaf(const Tag& node) = 0;
  virtual bool pair(const Tag& parent, const PendingPair& item) = 0;
  // Called for every perceived opening; `top` is the current stack top, if any.
  virtual void perceived_opening(const Tag& x, const Tag* next, bool next_is_closing, PendingPair* top) {
    (void)x, (void)next, (void)next_is_closing, (void)top;
  }
};

void run_left_heavy(Machine& m, TapeId doc, StreamView view, PairVisitor& visitor,
                    const ValidationOptions& opt, ValidationReport& report, LeftHeavyProfile& profile);

ValidationReport validate_leftheavy(Machine& m, TapeId doc, StreamView view, const CheckFn& check,
                                    const ValidationOptions& opt = {});
ValidationReport validate_twopass(Machine& m, TapeId doc, const CheckFn& forward_check,
                                  const CheckFn& backward_check, const ValidationOptions& opt = {});

// Convenience wrappers with the DTD check and root label.
ValidationReport validate_onepass(Machine& m, TapeId doc, const Schema& schema, ValidationOptions opt = {});
ValidationReport validate_twopass(Machine& m, TapeId doc, const Schema& schema, ValidationOptions opt = {});

// Structural guard used by the streaming passes: fails on ill-formed input or on
// a tree of the wrong shape. Tracks one frame per open node outside the metered memory.
class ShapeGuard {
 public:
  explicit ShapeGuard(bool enabled, TreeShape shape = TreeShape::FullBinary) : enabled_(enabled), shape_(shape) {}
  void step(const Tag& t, bool as_opening, std::size_t index);
  void finish(std::size_t index) const;

 private:
  struct Frame {
    Label label;
    std::uint8_t children;
  };
  bool enabled_;
  TreeShape shape_;
  bool rooted_ = false;
  std::vector<Frame> open_;
};

}  // namespace xmlstream
