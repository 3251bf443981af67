#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xmlstream/tag.hpp"

namespace xmlstream {

struct Doc {
  std::vector<Tag> tokens;

  std::size_t node_count() const noexcept;
  std::size_t size() const noexcept { return tokens.size(); }
  friend bool operator==(const Doc& a, const Doc& b) noexcept;
};

Doc parse_tokens(std::string_view text);
std::string render(std::span<const Tag> tokens);
inline std::string render(const Doc& doc) { return render(doc.tokens); }

struct WellFormedness {
  bool ok = true;
  std::size_t first_bad = 0;  // 1-based token index of the first violation
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

WellFormedness check_well_formed(const Doc& doc);

// Sets depth (root = 0) and pos (1-based index of the opening tag) on every tag.
Doc annotate_depth_pos(const Doc& doc);

struct Tree {
  struct Node {
    Label label;
    Variant variant = Variant::None;
    std::int32_t parent = -1;
    std::vector<std::uint32_t> children;
  };

  std::vector<Node> nodes;
  std::uint32_t root = 0;

  std::size_t size() const noexcept { return nodes.size(); }
  std::uint32_t add(Label label, std::int32_t parent, Variant variant = Variant::None);
};

Tree build_tree(const Doc& doc);
Doc serialize(const Tree& tree);

}  // namespace xmlstream
