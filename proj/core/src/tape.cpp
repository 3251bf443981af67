#include "xmlstream/tape.hpp"

#include <algorithm>
#include <sstream>

namespace xmlstream {

std::size_t RunStats::passes_on(const std::string& tape) const {
  auto it = passes_per_tape.find(tape);
  return it == passes_per_tape.end() ? 0 : it->second;
}

std::string RunStats::to_record() const {
  std::ostringstream out;
  out << "passes_total=" << passes_total << '\n';
  for (const auto& [tape, count] : passes_per_tape) out << "passes_per_tape." << tape << '=' << count << '\n';
  out << "peak_internal_cells=" << peak_internal_cells << '\n';
  for (const auto& [tape, len] : tape_lengths) out << "tape_lengths." << tape << '=' << len << '\n';
  out << "auxiliary_tapes=" << auxiliary_tapes << '\n';
  out << "budget_exceeded=" << (budget_exceeded ? 1 : 0) << '\n';
  return out.str();
}

void ResourceMeter::flag(const std::string& what) {
  exceeded_ = true;
  if (budget_.hard) throw Error(ErrorCode::BudgetExceeded, what);
}

void ResourceMeter::charge(std::ptrdiff_t delta) {
  if (delta < 0 && static_cast<std::size_t>(-delta) > current_) {
    throw Error(ErrorCode::NegativeMemory, "memory release exceeds current usage");
  }
  current_ = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(current_) + delta);
  if (current_ > peak_) {
    peak_ = current_;
    if (budget_.max_cells && peak_ > *budget_.max_cells) {
      flag("internal memory " + std::to_string(peak_) + " exceeds " + std::to_string(*budget_.max_cells));
    }
  }
}

void ResourceMeter::count_pass(const std::string& tape) {
  ++passes_total_;
  ++per_tape_[tape];
  if (budget_.max_passes && passes_total_ > *budget_.max_passes) {
    flag("pass " + std::to_string(passes_total_) + " exceeds " + std::to_string(*budget_.max_passes));
  }
}

PassBase::PassBase(Machine& machine, TapeId id, PassMode mode, Direction dir)
    : machine_(&machine), tape_(nullptr), id_(id), mode_(mode), dir_(dir) {
  tape_ = &machine.begin_pass(id, mode);
  serial_ = machine.next_serial_++;
  tracing_ = machine.tracing_;
}

PassBase::PassBase(PassBase&& other) noexcept
    : machine_(other.machine_),
      tape_(other.tape_),
      id_(other.id_),
      mode_(other.mode_),
      dir_(other.dir_),
      steps_(other.steps_),
      serial_(other.serial_),
      tracing_(other.tracing_) {
  other.tape_ = nullptr;
}

PassBase::~PassBase() { close(); }

void PassBase::close() {
  if (!tape_) return;
  if (mode_ == PassMode::Append) {
    tape_->cells.resize(steps_);
    tape_->written = true;
  }
  tape_->open = false;
  tape_ = nullptr;
}

void PassBase::record(std::size_t index) {
  machine_->trace_.push_back(AccessEvent{serial_, id_, index, mode_});
}

void WritePass::skip() {
  if (steps_ >= tape_->cells.size()) {
    throw Error(ErrorCode::OutOfRange, "skip past end of tape " + tape_->name);
  }
  ++steps_;
}

TapeState& Machine::tape(TapeId id) {
  if (id >= tapes_.size()) throw Error(ErrorCode::OutOfRange, "no tape with id " + std::to_string(id));
  return *tapes_[id];
}

const TapeState& Machine::tape(TapeId id) const {
  if (id >= tapes_.size()) throw Error(ErrorCode::OutOfRange, "no tape with id " + std::to_string(id));
  return *tapes_[id];
}

TapeId Machine::load_input(std::vector<Tag> cells, std::string name) {
  auto state = std::make_unique<TapeState>(TapeState{std::move(name), TapeKind::Input, std::move(cells)});
  state->written = true;
  tapes_.push_back(std::move(state));
  return tapes_.size() - 1;
}

TapeId Machine::create_tape(std::string name, TapeKind kind) {
  tapes_.push_back(std::make_unique<TapeState>(TapeState{std::move(name), kind, {}}));
  return tapes_.size() - 1;
}

TapeId Machine::auxiliary(std::size_t index) {
  std::string name = "aux" + std::to_string(index);
  if (auto found = find(name)) return *found;
  return create_tape(name, TapeKind::Auxiliary);
}

std::optional<TapeId> Machine::find(std::string_view name) const {
  for (std::size_t i = 0; i < tapes_.size(); ++i) {
    if (tapes_[i]->name == name) return i;
  }
  return std::nullopt;
}

TapeState& Machine::begin_pass(TapeId id, PassMode mode) {
  TapeState& t = tape(id);
  if (t.open) throw Error(ErrorCode::PassAlreadyOpen, "tape " + t.name + " already has an open pass");
  if (t.kind == TapeKind::Input && mode != PassMode::Read) {
    throw Error(ErrorCode::WriteToInput, "the input tape is read-only");
  }
  if (mode != PassMode::Append && !t.written) {
    throw Error(ErrorCode::NoContent, "tape " + t.name + " has no content");
  }
  meter_.count_pass(t.name);
  t.open = true;
  return t;
}

ReadPass Machine::read(TapeId id, Direction dir) { return ReadPass(*this, id, PassMode::Read, dir); }

WritePass Machine::append(TapeId id) { return WritePass(*this, id, PassMode::Append, Direction::Forward); }

OverwritePass Machine::overwrite(TapeId id, Direction dir) {
  return OverwritePass(*this, id, PassMode::Overwrite, dir);
}

std::size_t Machine::node_count(TapeId id) const {
  const auto& cells = tape(id).cells;
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const Tag& t) { return t.is_opening(); }));
}

std::size_t Machine::auxiliary_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      tapes_.begin(), tapes_.end(), [](const auto& t) { return t->kind == TapeKind::Auxiliary; }));
}

RunStats Machine::snapshot() const {
  RunStats s;
  s.passes_total = meter_.passes_total();
  s.passes_per_tape = meter_.passes_per_tape();
  s.peak_internal_cells = meter_.peak_cells();
  for (const auto& t : tapes_) s.tape_lengths[t->name] = t->cells.size();
  s.auxiliary_tapes = auxiliary_count();
  s.budget_exceeded = meter_.budget_exceeded();
  return s;
}

}  // namespace xmlstream
