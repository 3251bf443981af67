#pragma once

// Shared fixtures and independent oracles for the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "xmlstream/xmlstream.hpp"

namespace xmlstream::testing {

inline constexpr const char* kSampleDoc = "r b a /a a /a c /c /b b /b b a /a a /a /b c /c /r";
inline constexpr const char* kSampleFcns =
    "r.L b.L a.L a.R c.R /c.R /a.R /a.L b.R b.R a.L a.R /a.R /a.L c.R /c.R /b.R /b.R /b.L /r.L";
inline constexpr const char* kSampleBot =
    "r b a _ /_ a _ /_ c /c /a /a b _ /_ b a _ /_ a /a /a c /c /b /b /b _ /_ /r";
inline constexpr const char* kSampleDtd = "#root r\nr = b* c\nb = a* c?\na = ~\nc = ~\n";

inline Dtd sample_dtd() { return parse_dtd(kSampleDtd); }

// ---- regex membership by position-set simulation over the syntax tree ----

inline std::set<std::size_t> regex_ends(const Regex& r, std::span<const Label> w, std::size_t from) {
  using Op = Regex::Op;
  switch (r.op) {
    case Op::Epsilon:
      return {from};
    case Op::Symbol:
      if (from < w.size() && w[from] == r.symbol) return {from + 1};
      return {};
    case Op::Concat: {
      std::set<std::size_t> cur{from};
      for (const auto& part : r.operands) {
        std::set<std::size_t> next;
        for (auto p : cur) {
          auto e = regex_ends(part, w, p);
          next.insert(e.begin(), e.end());
        }
        cur = std::move(next);
      }
      return cur;
    }
    case Op::Alt: {
      std::set<std::size_t> out;
      for (const auto& part : r.operands) {
        auto e = regex_ends(part, w, from);
        out.insert(e.begin(), e.end());
      }
      return out;
    }
    case Op::Optional: {
      auto out = regex_ends(r.operands[0], w, from);
      out.insert(from);
      return out;
    }
    case Op::Star:
    case Op::Plus: {
      std::set<std::size_t> seen;
      std::vector<std::size_t> todo{from};
      while (!todo.empty()) {
        auto p = todo.back();
        todo.pop_back();
        for (auto e : regex_ends(r.operands[0], w, p)) {
          if (seen.insert(e).second) todo.push_back(e);
        }
      }
      if (r.op == Op::Star) seen.insert(from);
      return seen;
    }
  }
  return {};
}

inline bool regex_matches(const Regex& r, std::span<const Label> w) {
  return regex_ends(r, w, 0).count(w.size()) > 0;
}

// Direct recursive validity check: every node's children word against its rule.
inline bool oracle_valid(const Tree& tree, const Dtd& dtd) {
  if (tree.nodes.empty() || tree.nodes[tree.root].label != dtd.root) return false;
  for (const auto& n : tree.nodes) {
    const Regex* rule = dtd.rule(n.label);
    if (!rule) return false;
    std::vector<Label> w;
    for (auto c : n.children) w.push_back(tree.nodes[c].label);
    if (!regex_matches(*rule, w)) return false;
  }
  return true;
}

// All words over `alphabet` of length <= max_len.
inline std::vector<std::vector<Label>> all_words(const std::vector<Label>& alphabet, std::size_t max_len) {
  std::vector<std::vector<Label>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (Label a : alphabet) {
        auto w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// ---- machine helpers ----

inline Doc closings_of(const Doc& doc) {
  Doc out;
  for (const Tag& t : doc.tokens) {
    if (t.is_closing()) out.tokens.push_back(t);
  }
  return out;
}

inline Doc strip(std::span<const Tag> cells) {
  Doc out;
  for (const Tag& t : cells) {
    Tag c = t.is_opening() ? Tag::opening(t.label, t.variant) : Tag::closing(t.label, t.variant);
    if (t.is_opening() || t.is_closing()) out.tokens.push_back(c);
  }
  return out;
}

inline std::size_t floor_log2(std::size_t n) {
  std::size_t r = 0;
  while (n > 1) n >>= 1, ++r;
  return r;
}

inline std::size_t ceil_log2(std::size_t n) {
  std::size_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

inline Doc random_doc(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_fanout = 8,
                      std::size_t labels = 4) {
  std::uniform_int_distribution<std::size_t> size(1, max_nodes);
  std::uniform_int_distribution<std::size_t> fan(1, max_fanout);
  std::uniform_int_distribution<std::size_t> lab(1, labels);
  return serialize(gen_random_tree(size(rng), fan(rng), lab(rng), rng()));
}

}  // namespace xmlstream::testing
