#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xmlstream/error.hpp"
#include "xmlstream/tag.hpp"

namespace xmlstream {

enum class TapeKind : std::uint8_t { Input, Auxiliary, Output };
enum class PassMode : std::uint8_t { Read, Append, Overwrite };
enum class Direction : std::uint8_t { Forward, Backward };

using TapeId = std::size_t;

struct Budget {
  std::optional<std::size_t> max_passes;
  std::optional<std::size_t> max_cells;
  bool hard = false;
};

struct RunStats {
  std::size_t passes_total = 0;
  std::map<std::string, std::size_t> passes_per_tape;
  std::size_t peak_internal_cells = 0;
  std::map<std::string, std::size_t> tape_lengths;
  std::size_t auxiliary_tapes = 0;
  bool budget_exceeded = false;

  std::size_t passes_on(const std::string& tape) const;
  // One `key=value` line per counter.
  std::string to_record() const;
};

class ResourceMeter {
 public:
  explicit ResourceMeter(Budget budget = {}) : budget_(budget) {}

  // Adjusts current internal memory by `delta` cells.
  void charge(std::ptrdiff_t delta);
  void count_pass(const std::string& tape);

  std::size_t current_cells() const noexcept { return current_; }
  std::size_t peak_cells() const noexcept { return peak_; }
  std::size_t passes_total() const noexcept { return passes_total_; }
  const std::map<std::string, std::size_t>& passes_per_tape() const noexcept { return per_tape_; }
  bool budget_exceeded() const noexcept { return exceeded_; }
  const Budget& budget() const noexcept { return budget_; }

 private:
  void flag(const std::string& what);

  Budget budget_;
  std::size_t current_ = 0;
  std::size_t peak_ = 0;
  std::size_t passes_total_ = 0;
  std::map<std::string, std::size_t> per_tape_;
  bool exceeded_ = false;
};

// Charges `cells` on construction and releases whatever is held on destruction.
class ScopedCells {
 public:
  ScopedCells(ResourceMeter& meter, std::size_t cells) : meter_(meter), held_(cells) {
    meter_.charge(static_cast<std::ptrdiff_t>(cells));
  }
  ScopedCells(const ScopedCells&) = delete;
  ScopedCells& operator=(const ScopedCells&) = delete;
  ~ScopedCells() { meter_.charge(-static_cast<std::ptrdiff_t>(held_)); }

  void grow(std::size_t k) {
    meter_.charge(static_cast<std::ptrdiff_t>(k));
    held_ += k;
  }
  void shrink(std::size_t k) {
    meter_.charge(-static_cast<std::ptrdiff_t>(k));
    held_ -= k;
  }
  std::size_t held() const noexcept { return held_; }

 private:
  ResourceMeter& meter_;
  std::size_t held_;
};

// A vector whose elements each cost one cell of internal memory.
template <class T>
class MeteredVector {
 public:
  explicit MeteredVector(ResourceMeter& meter) : meter_(meter) {}
  MeteredVector(const MeteredVector&) = delete;
  MeteredVector& operator=(const MeteredVector&) = delete;
  ~MeteredVector() { clear(); }

  void push_back(T value) {
    meter_.charge(1);
    items_.push_back(std::move(value));
  }
  void pop_back() {
    items_.pop_back();
    meter_.charge(-1);
  }
  void erase(std::size_t index) {
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(index));
    meter_.charge(-1);
  }
  void clear() {
    meter_.charge(-static_cast<std::ptrdiff_t>(items_.size()));
    items_.clear();
  }

  bool empty() const noexcept { return items_.empty(); }
  std::size_t size() const noexcept { return items_.size(); }
  T& back() { return items_.back(); }
  const T& back() const { return items_.back(); }
  T& operator[](std::size_t i) { return items_[i]; }
  const T& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<T>& items() const noexcept { return items_; }

 private:
  ResourceMeter& meter_;
  std::vector<T> items_;
};

struct AccessEvent {
  std::size_t pass_serial;
  TapeId tape;
  std::size_t index;
  PassMode mode;
};

class Machine;
struct TapeState;

class PassBase {
 public:
  PassBase(const PassBase&) = delete;
  PassBase& operator=(const PassBase&) = delete;
  PassBase(PassBase&& other) noexcept;
  PassBase& operator=(PassBase&&) = delete;
  ~PassBase();

  void close();
  bool is_open() const noexcept { return tape_ != nullptr; }
  // Number of cells visited so far.
  std::size_t position() const noexcept { return steps_; }
  std::size_t tape_length() const noexcept;
  Direction direction() const noexcept { return dir_; }

 protected:
  PassBase(Machine& machine, TapeId id, PassMode mode, Direction dir);
  std::size_t physical(std::size_t step) const noexcept;
  void record(std::size_t index);

  Machine* machine_;
  TapeState* tape_;
  TapeId id_;
  PassMode mode_;
  Direction dir_;
  std::size_t steps_ = 0;
  std::size_t serial_ = 0;
  bool tracing_ = false;
};

class ReadPass : public PassBase {
 public:
  bool at_end() const noexcept;
  std::size_t remaining() const noexcept { return tape_length() - steps_; }
  Tag next();

 private:
  friend class Machine;
  using PassBase::PassBase;
};

// Forward write pass. Writing replaces or extends, skip() keeps the existing cell;
// closing the pass cuts the tape at the cursor.
class WritePass : public PassBase {
 public:
  void write(const Tag& tag);
  void skip();

 private:
  friend class Machine;
  using PassBase::PassBase;
};

// Replaces payloads of existing cells; tape length never changes.
class OverwritePass : public PassBase {
 public:
  bool at_end() const noexcept;
  void write(const Tag& tag);
  void skip();

 private:
  friend class Machine;
  using PassBase::PassBase;
};

struct TapeState {
  std::string name;
  TapeKind kind;
  std::vector<Tag> cells;
  bool open = false;
  bool written = false;
};

class Machine {
 public:
  explicit Machine(Budget budget = {}) : meter_(budget) {}
  Machine(const Machine&) = delete;
  Machine& operator=(const Machine&) = delete;

  TapeId load_input(std::vector<Tag> cells, std::string name = "input");
  TapeId create_tape(std::string name, TapeKind kind = TapeKind::Auxiliary);
  // The auxiliary tape "aux<index>", created on first use.
  TapeId auxiliary(std::size_t index);
  std::optional<TapeId> find(std::string_view name) const;

  ReadPass read(TapeId id, Direction dir = Direction::Forward);
  WritePass append(TapeId id);
  OverwritePass overwrite(TapeId id, Direction dir = Direction::Forward);

  // Tape metadata, known without a pass.
  std::size_t length(TapeId id) const { return tape(id).cells.size(); }
  std::size_t node_count(TapeId id) const;
  const std::string& name(TapeId id) const { return tape(id).name; }
  TapeKind kind(TapeId id) const { return tape(id).kind; }
  std::size_t tape_count() const noexcept { return tapes_.size(); }
  std::size_t auxiliary_count() const noexcept;

  // Harness-side inspection; not part of the streaming model.
  const std::vector<Tag>& contents(TapeId id) const { return tape(id).cells; }

  ResourceMeter& meter() noexcept { return meter_; }
  const ResourceMeter& meter() const noexcept { return meter_; }
  RunStats snapshot() const;

  void set_tracing(bool on) noexcept { tracing_ = on; }
  bool tracing() const noexcept { return tracing_; }
  const std::vector<AccessEvent>& access_trace() const noexcept { return trace_; }

 private:
  friend class PassBase;

  TapeState& tape(TapeId id);
  const TapeState& tape(TapeId id) const;
  TapeState& begin_pass(TapeId id, PassMode mode);

  ResourceMeter meter_;
  std::vector<std::unique_ptr<TapeState>> tapes_;
  std::vector<AccessEvent> trace_;
  std::size_t next_serial_ = 0;
  bool tracing_ = false;
};

// A one-cell read-ahead buffer over a read pass, charged to internal memory.
class Lookahead {
 public:
  Lookahead(ReadPass& pass, ResourceMeter& meter) : pass_(pass), cell_(meter, 1) { fill(); }

  const Tag* peek() const noexcept { return has_ ? &head_ : nullptr; }
  bool at_end() const noexcept { return !has_; }
  Tag take() {
    Tag out = head_;
    fill();
    return out;
  }
  // Stream position (1-based) of the cell returned by the last take().
  std::size_t consumed() const noexcept { return pass_.position() - (has_ ? 1 : 0); }

 private:
  void fill() {
    has_ = !pass_.at_end();
    if (has_) head_ = pass_.next();
  }

  ReadPass& pass_;
  ScopedCells cell_;
  Tag head_;
  bool has_ = false;
};

// ---- inline pass operations ----

inline std::size_t PassBase::tape_length() const noexcept { return tape_ ? tape_->cells.size() : 0; }

inline std::size_t PassBase::physical(std::size_t step) const noexcept {
  return dir_ == Direction::Forward ? step : tape_->cells.size() - 1 - step;
}

inline bool ReadPass::at_end() const noexcept { return steps_ >= tape_->cells.size(); }

inline Tag ReadPass::next() {
  if (at_end()) throw Error(ErrorCode::OutOfRange, "read past end of tape " + tape_->name);
  std::size_t index = physical(steps_++);
  if (tracing_) record(index);
  return tape_->cells[index];
}

inline void WritePass::write(const Tag& tag) {
  if (steps_ < tape_->cells.size()) {
    tape_->cells[steps_] = tag;
  } else {
    tape_->cells.push_back(tag);
  }
  if (tracing_) record(steps_);
  ++steps_;
}

inline bool OverwritePass::at_end() const noexcept { return steps_ >= tape_->cells.size(); }

inline void OverwritePass::write(const Tag& tag) {
  if (at_end()) throw Error(ErrorCode::OutOfRange, "overwrite past end of tape " + tape_->name);
  std::size_t index = physical(steps_++);
  if (tracing_) record(index);
  tape_->cells[index] = tag;
}

inline void OverwritePass::skip() {
  if (at_end()) throw Error(ErrorCode::OutOfRange, "overwrite past end of tape " + tape_->name);
  ++steps_;
}

}  // namespace xmlstream
