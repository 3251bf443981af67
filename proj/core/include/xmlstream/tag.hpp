#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "xmlstream/label.hpp"

namespace xmlstream {

enum class TagKind : std::uint8_t { Opening, Closing, Separator, Dummy, Counter };
enum class Variant : std::uint8_t { None, Left, Right };

// One tape cell. Separators use `depth`; counter cells keep their value in `pos`.
struct Tag {
  TagKind kind = TagKind::Opening;
  Variant variant = Variant::None;
  Label label;
  std::int32_t depth = -1;
  std::int32_t state = -1;
  std::int64_t pos = 0;

  static Tag opening(Label l, Variant v = Variant::None) { return Tag{TagKind::Opening, v, l}; }
  static Tag closing(Label l, Variant v = Variant::None) { return Tag{TagKind::Closing, v, l}; }
  static Tag separator(std::int32_t depth) {
    Tag t;
    t.kind = TagKind::Separator;
    t.depth = depth;
    return t;
  }
  static Tag dummy() {
    Tag t;
    t.kind = TagKind::Dummy;
    return t;
  }
  static Tag counter(std::int64_t value) {
    Tag t;
    t.kind = TagKind::Counter;
    t.pos = value;
    return t;
  }

  bool is_opening() const noexcept { return kind == TagKind::Opening; }
  bool is_closing() const noexcept { return kind == TagKind::Closing; }
  bool is_separator() const noexcept { return kind == TagKind::Separator; }
  bool is_dummy() const noexcept { return kind == TagKind::Dummy; }
};

// Same token text: kind, label and variant agree (annotations ignored).
bool same_token(const Tag& a, const Tag& b) noexcept;

Tag parse_token(std::string_view text);
std::string token_text(const Tag& tag);

}  // namespace xmlstream
