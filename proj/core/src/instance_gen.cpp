#include "xmlstream/instance_gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "xmlstream/error.hpp"
#include "xmlstream/fcns.hpp"
#include "xmlstream/schema.hpp"

namespace xmlstream {

namespace {

Label bit(std::uint8_t b) { return Label::of(b ? "1" : "0"); }

void require_bits(std::span<const std::uint8_t> v, const char* what) {
  for (auto b : v) {
    if (b > 1) throw Error(ErrorCode::SyntaxError, std::string(what) + " must be a bitstring");
  }
}

std::vector<Label> numbered(const char* prefix, std::size_t count) {
  std::vector<Label> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(Label::of(prefix + std::to_string(i)));
  return out;
}

}  // namespace

Dtd disj_dtd() {
  return parse_dtd(
      "#root r\n"
      "r = 0 r 0 | 0 r 1 | 1 r 0 | ~\n"
      "0 = ~\n"
      "1 = ~\n");
}

Instance gen_disj(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::SyntaxError, "x and y differ in length");
  require_bits(x, "x");
  require_bits(y, "y");
  const Label r = Label::of("r");
  Instance inst{{}, disj_dtd()};
  auto& t = inst.doc.tokens;
  t.reserve(6 * x.size() + 2);
  for (auto b : x) {
    t.push_back(Tag::opening(r));
    t.push_back(Tag::opening(bit(b)));
    t.push_back(Tag::closing(bit(b)));
  }
  t.push_back(Tag::opening(r));
  t.push_back(Tag::closing(r));
  for (std::size_t i = y.size(); i > 0; --i) {
    t.push_back(Tag::opening(bit(y[i - 1])));
    t.push_back(Tag::closing(bit(y[i - 1])));
    t.push_back(Tag::closing(r));
  }
  return inst;
}

Dtd appb_dtd() {
  return parse_dtd(
      "#root r\n"
      "r = 0 1 | 1 0\n"
      "0 = 0 1 | 1 0 | 1 1 | ~\n"
      "1 = 0 1 | 1 0 | 0 0 | ~\n");
}

bool appb_expected_valid(std::span<const Gadget> gadgets) {
  return std::all_of(gadgets.begin(), gadgets.end(), [](const Gadget& g) {
    return g.d != g.x[g.k - 1] || g.d != g.x[g.k];
  });
}

Instance gen_appb(std::span<const Gadget> gadgets) {
  if (gadgets.empty()) throw Error(ErrorCode::SyntaxError, "need at least one gadget");
  for (const Gadget& g : gadgets) {
    require_bits(g.x, "x");
    if (g.x.size() < 2 || g.k < 1 || g.k >= g.x.size()) {
      throw Error(ErrorCode::SyntaxError, "gadget needs n >= 2 and 1 <= k <= n-1");
    }
    if (g.d > 1) throw Error(ErrorCode::SyntaxError, "d must be a bit");
  }
  Tree tree;
  std::int32_t attach = static_cast<std::int32_t>(tree.add(Label::of("r"), -1));
  for (const Gadget& g : gadgets) {
    const std::size_t n = g.x.size();
    auto spine = static_cast<std::int32_t>(tree.add(bit(g.x[0]), attach));
    tree.add(bit(1 - g.x[0]), attach);
    std::int32_t branch = -1;
    for (std::size_t j = 1; j < n; ++j) {
      auto next = static_cast<std::int32_t>(tree.add(bit(g.x[j]), spine));
      if (j == g.k) {
        branch = static_cast<std::int32_t>(tree.add(bit(g.d), spine));
      } else {
        tree.add(bit(1 - g.x[j]), spine);
      }
      spine = next;
    }
    attach = branch;
  }
  return {serialize(tree), appb_dtd()};
}

Doc gen_star(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::SyntaxError, "star needs n >= 1");
  Doc doc;
  const Label r = Label::of("r");
  doc.tokens.push_back(Tag::opening(r));
  for (std::size_t i = 1; i <= n; ++i) {
    Label x = Label::of("x" + std::to_string(i));
    doc.tokens.push_back(Tag::opening(x));
    doc.tokens.push_back(Tag::closing(x));
  }
  doc.tokens.push_back(Tag::closing(r));
  return doc;
}

Doc gen_caterpillar_decode(std::size_t n, std::size_t k, const Tree& y) {
  if (n < 1 || k < 1 || k > n) throw Error(ErrorCode::SyntaxError, "caterpillar needs 1 <= k <= n");
  if (y.nodes.empty()) throw Error(ErrorCode::EmptyInput, "empty subtree");
  Doc sub = encode_offline(y);
  sub.tokens.front().variant = Variant::Right;
  sub.tokens.back().variant = Variant::Right;

  std::vector<Label> xs;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(Label::of("x" + std::to_string(i)));
  const Label r = Label::of("r");
  Doc doc;
  auto& t = doc.tokens;
  t.push_back(Tag::opening(r, Variant::Left));
  for (Label x : xs) t.push_back(Tag::opening(x, Variant::Left));
  for (std::size_t i = n; i > k; --i) t.push_back(Tag::closing(xs[i - 1], Variant::Left));
  t.insert(t.end(), sub.tokens.begin(), sub.tokens.end());
  for (std::size_t i = k; i > 0; --i) t.push_back(Tag::closing(xs[i - 1], Variant::Left));
  t.push_back(Tag::closing(r, Variant::Left));
  return doc;
}

Doc gen_left_spine(std::size_t n) {
  const Label s = Label::of("s");
  const Label l = Label::of("l");
  Doc doc;
  auto& t = doc.tokens;
  for (std::size_t i = 0; i < n; ++i) t.push_back(Tag::opening(s));
  t.push_back(Tag::opening(s));
  t.push_back(Tag::closing(s));
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back(Tag::opening(l));
    t.push_back(Tag::closing(l));
    t.push_back(Tag::closing(s));
  }
  return doc;
}

Tree gen_random_tree(std::size_t n, std::size_t max_fanout, std::size_t label_count, std::uint64_t seed) {
  if (n < 1 || max_fanout < 1 || label_count < 1) {
    throw Error(ErrorCode::SyntaxError, "random tree needs n, fan-out and label count >= 1");
  }
  std::mt19937_64 rng(seed);
  const auto labels = numbered("t", label_count);
  std::uniform_int_distribution<std::size_t> pick_label(0, label_count - 1);
  Tree tree;
  tree.nodes.reserve(n);
  tree.add(labels[pick_label(rng)], -1);
  std::vector<std::uint32_t> open{0};
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t at = std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng);
    std::uint32_t parent = open[at];
    std::uint32_t child = tree.add(labels[pick_label(rng)], static_cast<std::int32_t>(parent));
    if (tree.nodes[parent].children.size() >= max_fanout) {
      open[at] = open.back();
      open.pop_back();
    }
    open.push_back(child);
  }
  return tree;
}

Tree gen_random_binary_tree(std::size_t internal, std::size_t label_count, std::uint64_t seed) {
  if (label_count < 1) throw Error(ErrorCode::SyntaxError, "label count must be >= 1");
  std::mt19937_64 rng(seed);
  const auto labels = numbered("t", label_count);
  std::uniform_int_distribution<std::size_t> pick_label(0, label_count - 1);
  Tree tree;
  tree.nodes.reserve(2 * internal + 1);
  tree.add(labels[pick_label(rng)], -1);
  std::vector<std::uint32_t> leaves{0};
  for (std::size_t i = 0; i < internal; ++i) {
    std::size_t at = std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng);
    auto parent = static_cast<std::int32_t>(leaves[at]);
    leaves[at] = tree.add(labels[pick_label(rng)], parent);
    leaves.push_back(tree.add(labels[pick_label(rng)], parent));
  }
  return tree;
}

Dtd gen_dtd_for_tree(const Tree& tree) {
  if (tree.nodes.empty()) throw Error(ErrorCode::EmptyInput, "empty tree");
  std::map<Label, std::set<std::vector<Label>>> words;
  std::vector<Label> order;
  for (const auto& node : tree.nodes) {
    std::vector<Label> w;
    for (auto c : node.children) w.push_back(tree.nodes[c].label);
    auto [it, fresh] = words.try_emplace(node.label);
    if (fresh) order.push_back(node.label);
    it->second.insert(std::move(w));
  }
  Dtd dtd;
  dtd.root = tree.nodes[tree.root].label;
  for (Label l : order) {
    std::vector<Regex> alts;
    for (const auto& w : words[l]) {
      if (w.empty()) {
        alts.push_back(Regex::epsilon());
        continue;
      }
      std::vector<Regex> parts;
      for (Label c : w) parts.push_back(Regex::sym(c));
      alts.push_back(Regex::concat(std::move(parts)));
    }
    dtd.add_rule(l, Regex::alt(std::move(alts)));
  }
  return dtd;
}

namespace {

Regex random_regex(std::mt19937_64& rng, std::span<const Label> labels, int depth) {
  std::uniform_int_distribution<int> op(0, depth > 0 ? 6 : 1);
  auto sym = [&] { return Regex::sym(labels[std::uniform_int_distribution<std::size_t>(0, labels.size() - 1)(rng)]); };
  switch (op(rng)) {
    case 0:
    case 1:
      return sym();
    case 2:
      return Regex::concat({random_regex(rng, labels, depth - 1), random_regex(rng, labels, depth - 1)});
    case 3:
      return Regex::alt({random_regex(rng, labels, depth - 1), random_regex(rng, labels, depth - 1)});
    case 4:
      return Regex::star(random_regex(rng, labels, depth - 1));
    case 5:
      return Regex::optional(random_regex(rng, labels, depth - 1));
    default:
      return Regex::alt({Regex::epsilon(), random_regex(rng, labels, depth - 1)});
  }
}

}  // namespace

Dtd gen_random_dtd(std::size_t label_count, std::uint64_t seed) {
  if (label_count < 1) throw Error(ErrorCode::SyntaxError, "label count must be >= 1");
  std::mt19937_64 rng(seed);
  const auto labels = numbered("t", label_count);
  Dtd dtd;
  dtd.root = labels.front();
  for (Label l : labels) {
    // Every rule admits the empty word so random documents terminate.
    dtd.add_rule(l, Regex::alt({Regex::epsilon(), random_regex(rng, labels, 3)}));
  }
  return dtd;
}

Mutation mutate_invalid(const Doc& doc, const Dtd& dtd, std::uint64_t seed) {
  Tree tree = build_tree(doc);
  Schema schema(dtd);
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> nodes(tree.size());
  std::iota(nodes.begin(), nodes.end(), 0u);
  std::shuffle(nodes.begin(), nodes.end(), rng);
  std::vector<Label> candidates = dtd.labels();

  auto word_of = [&](std::uint32_t v) {
    std::vector<Label> w;
    for (auto c : tree.nodes[v].children) w.push_back(tree.nodes[c].label);
    return w;
  };
  auto breaks = [&](std::uint32_t v, Label l) {
    const auto& node = tree.nodes[v];
    if (node.parent < 0) {
      if (l != dtd.root) return true;
    } else {
      auto p = static_cast<std::uint32_t>(node.parent);
      Label pl = tree.nodes[p].label;
      if (!schema.has_rule(pl)) return false;
      auto w = word_of(p);
      auto& kids = tree.nodes[p].children;
      w[static_cast<std::size_t>(std::find(kids.begin(), kids.end(), v) - kids.begin())] = l;
      if (!schema.check(pl, w)) return true;
    }
    return !schema.check(l, word_of(v));
  };

  for (std::uint32_t v : nodes) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    for (Label l : candidates) {
      if (l == tree.nodes[v].label || !breaks(v, l)) continue;
      tree.nodes[v].label = l;
      return {serialize(tree), true, static_cast<std::size_t>(v) + 1};
    }
  }
  return {doc, false, 0};
}

}  // namespace xmlstream
