#include "xmlstream/tag.hpp"

#include <charconv>

#include "xmlstream/error.hpp"

namespace xmlstream {

bool same_token(const Tag& a, const Tag& b) noexcept {
  if (a.kind != b.kind) return false;
  if (a.kind == TagKind::Separator) return a.depth == b.depth;
  if (a.kind == TagKind::Counter) return a.pos == b.pos;
  return a.label == b.label && a.variant == b.variant;
}

Tag parse_token(std::string_view text) {
  auto malformed = [&] {
    return Error(ErrorCode::MalformedToken, "cannot parse token '" + std::string(text) + "'");
  };
  if (text.empty()) throw malformed();
  if (text[0] == '%') {
    std::int32_t depth = -1;
    if (text.size() > 1) {
      auto [p, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), depth);
      if (ec != std::errc{} || p != text.data() + text.size()) throw malformed();
    }
    return Tag::separator(depth);
  }
  if (text == "?") return Tag::dummy();
  if (text[0] == '#') {
    std::int64_t value = 0;
    auto [p, ec] = std::from_chars(text.data() + 1, text.data() + text.size(), value);
    if (text.size() == 1 || ec != std::errc{} || p != text.data() + text.size()) throw malformed();
    return Tag::counter(value);
  }
  bool closing = text[0] == '/';
  std::string_view body = closing ? text.substr(1) : text;
  Variant variant = Variant::None;
  if (body.size() > 2 && body[body.size() - 2] == '.') {
    char v = body.back();
    if (v == 'L') {
      variant = Variant::Left;
    } else if (v == 'R') {
      variant = Variant::Right;
    } else {
      throw malformed();
    }
    body.remove_suffix(2);
  }
  if (body != "_" && !is_valid_label_name(body)) throw malformed();
  Label label = Label::of(body);
  return closing ? Tag::closing(label, variant) : Tag::opening(label, variant);
}

std::string token_text(const Tag& tag) {
  switch (tag.kind) {
    case TagKind::Separator:
      return tag.depth >= 0 ? "%" + std::to_string(tag.depth) : "%";
    case TagKind::Dummy:
      return "?";
    case TagKind::Counter:
      return "#" + std::to_string(tag.pos);
    default:
      break;
  }
  std::string out;
  if (tag.kind == TagKind::Closing) out.push_back('/');
  out.append(tag.label.name());
  if (tag.variant == Variant::Left) out.append(".L");
  if (tag.variant == Variant::Right) out.append(".R");
  return out;
}

}  // namespace xmlstream
