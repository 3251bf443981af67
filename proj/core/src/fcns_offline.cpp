#include <utility>

#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"

namespace xmlstream {

namespace {

// Binary tree with explicit slots, used by the offline conversions.
struct BinNode {
  Label label;
  Variant variant = Variant::None;
  std::int32_t left = -1;
  std::int32_t right = -1;
};

void require_wf(const Doc& doc) {
  auto wf = check_well_formed(doc);
  if (!wf) throw Error(ErrorCode::NotWellFormed, wf.reason + " at token " + std::to_string(wf.first_bad));
}

// Parses a 2-ranked document whose child slots are given by .L/.R variants.
std::vector<BinNode> parse_fcns(const Doc& doc) {
  require_wf(doc);
  std::vector<BinNode> nodes;
  std::vector<std::int32_t> open;
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Tag& t = doc.tokens[i];
    if (t.is_closing()) {
      open.pop_back();
      continue;
    }
    if (t.variant == Variant::None) {
      throw Error(ErrorCode::MalformedToken, "missing .L/.R variant at token " + std::to_string(i + 1));
    }
    auto id = static_cast<std::int32_t>(nodes.size());
    nodes.push_back({t.label, t.variant});
    if (!open.empty()) {
      BinNode& p = nodes[static_cast<std::size_t>(open.back())];
      std::int32_t& slot = t.variant == Variant::Left ? p.left : p.right;
      if (slot >= 0 || (t.variant == Variant::Left && p.right >= 0)) {
        throw Error(ErrorCode::NotBinary, "bad child slot at token " + std::to_string(i + 1));
      }
      slot = id;
    } else if (t.variant != Variant::Left) {
      throw Error(ErrorCode::MalformedToken, "root must be a left node");
    }
    open.push_back(id);
  }
  return nodes;
}

// Parses a full binary document where _ marks an empty slot.
std::vector<BinNode> parse_bot(const Doc& doc) {
  require_wf(doc);
  std::vector<BinNode> nodes;
  std::vector<std::pair<std::int32_t, int>> open;  // node, children seen
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const Tag& t = doc.tokens[i];
    if (t.is_closing()) {
      if (open.back().second == 1) {
        throw Error(ErrorCode::NotFullBinary, "one child under '" + t.label.str() + "' at token " + std::to_string(i + 1));
      }
      open.pop_back();
      continue;
    }
    if (t.variant != Variant::None) {
      throw Error(ErrorCode::MalformedToken, "unexpected variant at token " + std::to_string(i + 1));
    }
    auto id = static_cast<std::int32_t>(nodes.size());
    nodes.push_back({t.label});
    if (!open.empty()) {
      auto& [parent, seen] = open.back();
      if (seen == 2) throw Error(ErrorCode::NotBinary, "third child at token " + std::to_string(i + 1));
      BinNode& p = nodes[static_cast<std::size_t>(parent)];
      (seen == 0 ? p.left : p.right) = id;
      ++seen;
    }
    open.emplace_back(id, 0);
  }
  return nodes;
}

// Emits node, left subtree, right subtree, closing. `fill` pads a lone child with _.
Doc emit_binary(const std::vector<BinNode>& nodes, bool variants, bool fill) {
  Doc doc;
  doc.tokens.reserve(nodes.size() * 2);
  std::vector<std::pair<std::int32_t, int>> stack{{0, 0}};
  auto open_tag = [&](const BinNode& n) { return Tag::opening(n.label, variants ? n.variant : Variant::None); };
  auto close_tag = [&](const BinNode& n) { return Tag::closing(n.label, variants ? n.variant : Variant::None); };
  auto pad = [&] {
    doc.tokens.push_back(Tag::opening(Label::bottom()));
    doc.tokens.push_back(Tag::closing(Label::bottom()));
  };
  doc.tokens.push_back(open_tag(nodes[0]));
  while (!stack.empty()) {
    auto& [id, stage] = stack.back();
    const BinNode& n = nodes[static_cast<std::size_t>(id)];
    bool lone = fill && ((n.left < 0) != (n.right < 0));
    if (stage == 0) {
      stage = 1;
      if (n.left >= 0) {
        doc.tokens.push_back(open_tag(nodes[static_cast<std::size_t>(n.left)]));
        stack.emplace_back(n.left, 0);
      } else if (lone) {
        pad();
      }
    } else if (stage == 1) {
      stage = 2;
      if (n.right >= 0) {
        doc.tokens.push_back(open_tag(nodes[static_cast<std::size_t>(n.right)]));
        stack.emplace_back(n.right, 0);
      } else if (lone) {
        pad();
      }
    } else {
      doc.tokens.push_back(close_tag(n));
      stack.pop_back();
    }
  }
  return doc;
}

}  // namespace

Doc encode_offline(const Tree& tree) {
  // Breadth-first reindexing puts the root at slot 0.
  std::vector<std::int32_t> index(tree.size(), -1);
  std::vector<std::uint32_t> order{tree.root};
  std::vector<BinNode> bin;
  bin.reserve(tree.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::uint32_t v = order[k];
    index[v] = static_cast<std::int32_t>(k);
    bin.push_back({tree.nodes[v].label, Variant::Left});
    for (std::uint32_t c : tree.nodes[v].children) order.push_back(c);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& children = tree.nodes[order[k]].children;
    if (children.empty()) continue;
    bin[k].left = index[children[0]];
    bin[static_cast<std::size_t>(index[children[0]])].variant = Variant::Left;
    for (std::size_t j = 1; j < children.size(); ++j) {
      auto prev = static_cast<std::size_t>(index[children[j - 1]]);
      bin[prev].right = index[children[j]];
      bin[static_cast<std::size_t>(index[children[j]])].variant = Variant::Right;
    }
  }
  return emit_binary(bin, true, false);
}

Doc to_bot_form(const Doc& fcns) { return emit_binary(parse_fcns(fcns), false, true); }

Doc from_bot_form(const Doc& bot) {
  std::vector<BinNode> nodes = parse_bot(bot);
  // Drop _ leaves and restore variants from the slots.
  nodes[0].variant = Variant::Left;
  for (auto& n : nodes) {
    if (n.left >= 0 && nodes[static_cast<std::size_t>(n.left)].label.is_bottom()) n.left = -1;
    if (n.right >= 0 && nodes[static_cast<std::size_t>(n.right)].label.is_bottom()) n.right = -1;
    if (n.left >= 0) nodes[static_cast<std::size_t>(n.left)].variant = Variant::Left;
    if (n.right >= 0) nodes[static_cast<std::size_t>(n.right)].variant = Variant::Right;
  }
  return emit_binary(nodes, true, false);
}

Doc decode_offline(const Doc& fcns) {
  parse_fcns(fcns);
  Doc out;
  out.tokens.reserve(fcns.tokens.size());
  std::vector<Label> open;
  const auto& x = fcns.tokens;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_opening()) {
      out.tokens.push_back(Tag::opening(x[i].label));
      open.push_back(x[i].label);
      bool has_left = i + 1 < x.size() && x[i + 1].is_opening() && x[i + 1].variant == Variant::Left;
      if (!has_left) out.tokens.push_back(Tag::closing(x[i].label));
    } else {
      open.pop_back();
      if (x[i].variant == Variant::Left && !open.empty()) out.tokens.push_back(Tag::closing(open.back()));
    }
  }
  return out;
}

}  // namespace xmlstream
