#include "xmlstream/document.hpp"

#include <algorithm>
#include <cctype>

#include "xmlstream/error.hpp"

namespace xmlstream {

std::size_t Doc::node_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(tokens.begin(), tokens.end(), [](const Tag& t) { return t.is_opening(); }));
}

bool operator==(const Doc& a, const Doc& b) noexcept {
  return std::equal(a.tokens.begin(), a.tokens.end(), b.tokens.begin(), b.tokens.end(), same_token);
}

Doc parse_tokens(std::string_view text) {
  Doc doc;
  std::size_t i = 0;
  auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (i < text.size()) {
    while (i < text.size() && space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !space(text[i])) ++i;
    if (i > start) doc.tokens.push_back(parse_token(text.substr(start, i - start)));
  }
  if (doc.tokens.empty()) throw Error(ErrorCode::EmptyInput, "document has no tokens");
  return doc;
}

std::string render(std::span<const Tag> tokens) {
  std::string out;
  for (const Tag& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token_text(t);
  }
  return out;
}

WellFormedness check_well_formed(const Doc& doc) {
  std::vector<const Tag*> open;
  bool rooted = false;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Tag& t = doc.tokens[i];
    auto fail = [&](std::string why) { return WellFormedness{false, i + 1, std::move(why)}; };
    if (t.is_opening()) {
      if (open.empty() && rooted) return fail("second root");
      rooted = true;
      open.push_back(&t);
    } else if (t.is_closing()) {
      if (open.empty()) return fail("closing tag without opening");
      const Tag& o = *open.back();
      if (o.label != t.label || o.variant != t.variant) return fail("label mismatch");
      open.pop_back();
    } else {
      return fail("unexpected non-tag token");
    }
  }
  if (doc.tokens.empty()) return WellFormedness{false, 0, "empty document"};
  if (!open.empty()) return WellFormedness{false, doc.tokens.size(), "unclosed tags"};
  return {};
}

Doc annotate_depth_pos(const Doc& doc) {
  if (!check_well_formed(doc)) throw Error(ErrorCode::NotWellFormed, "cannot annotate");
  Doc out = doc;
  std::vector<std::int64_t> open_pos;
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    Tag& t = out.tokens[i];
    if (t.is_opening()) {
      t.depth = static_cast<std::int32_t>(open_pos.size());
      t.pos = static_cast<std::int64_t>(i + 1);
      open_pos.push_back(t.pos);
    } else {
      t.pos = open_pos.back();
      open_pos.pop_back();
      t.depth = static_cast<std::int32_t>(open_pos.size());
    }
  }
  return out;
}

std::uint32_t Tree::add(Label label, std::int32_t parent, Variant variant) {
  auto id = static_cast<std::uint32_t>(nodes.size());
  nodes.push_back(Node{label, variant, parent, {}});
  if (parent >= 0) nodes[static_cast<std::size_t>(parent)].children.push_back(id);
  return id;
}

Tree build_tree(const Doc& doc) {
  auto wf = check_well_formed(doc);
  if (!wf) {
    throw Error(ErrorCode::NotWellFormed, wf.reason + " at token " + std::to_string(wf.first_bad));
  }
  Tree tree;
  tree.nodes.reserve(doc.tokens.size() / 2);
  std::vector<std::int32_t> open;
  for (const Tag& t : doc.tokens) {
    if (t.is_opening()) {
      std::int32_t parent = open.empty() ? -1 : open.back();
      open.push_back(static_cast<std::int32_t>(tree.add(t.label, parent, t.variant)));
    } else {
      open.pop_back();
    }
  }
  return tree;
}

Doc serialize(const Tree& tree) {
  Doc doc;
  if (tree.nodes.empty()) return doc;
  doc.tokens.reserve(tree.nodes.size() * 2);
  // (node, next child index) frames
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  stack.emplace_back(tree.root, 0);
  const auto& root = tree.nodes[tree.root];
  doc.tokens.push_back(Tag::opening(root.label, root.variant));
  while (!stack.empty()) {
    auto& [node, next] = stack.back();
    const auto& n = tree.nodes[node];
    if (next < n.children.size()) {
      std::uint32_t child = n.children[next++];
      const auto& c = tree.nodes[child];
      doc.tokens.push_back(Tag::opening(c.label, c.variant));
      stack.emplace_back(child, 0);
    } else {
      doc.tokens.push_back(Tag::closing(n.label, n.variant));
      stack.pop_back();
    }
  }
  return doc;
}

}  // namespace xmlstream
