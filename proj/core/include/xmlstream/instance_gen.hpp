#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "xmlstream/document.hpp"
#include "xmlstream/dtd.hpp"

namespace xmlstream {

struct Instance {
  Doc doc;
  Dtd dtd;
};

// Nested r(x_i, r, y_i) tree over labels 0/1 with the disjointness DTD.
Instance gen_disj(std::span<const std::uint8_t> x, std::span<const std::uint8_t> y);
Dtd disj_dtd();

struct Gadget {
  std::vector<std::uint8_t> x;  // n bits
  std::size_t k = 1;            // 1 <= k <= n-1
  std::uint8_t d = 0;
};

// m chained gadgets; gadget i+1 hangs under the branch leaf d_i.
Instance gen_appb(std::span<const Gadget> gadgets);
Dtd appb_dtd();
// The validity predicate the instance family encodes.
bool appb_expected_valid(std::span<const Gadget> gadgets);

// r with children x1..xn.
Doc gen_star(std::size_t n);
// FCNS form: r.L x1.L ... xn.L, with FCNS(y) hung as the right child of x_k.
Doc gen_caterpillar_decode(std::size_t n, std::size_t k, const Tree& y);
// Unranked left spine r x1 ... xn of depth n, one leaf per spine node.
Doc gen_left_spine(std::size_t n);

// Sequential attachment: node i picks a uniform parent among nodes with
// fewer than max_fanout children. Labels are t0..t{label_count-1}.
Tree gen_random_tree(std::size_t n, std::size_t max_fanout, std::size_t label_count, std::uint64_t seed);
// Full binary tree with `internal` internal nodes (2*internal+1 nodes).
Tree gen_random_binary_tree(std::size_t internal, std::size_t label_count, std::uint64_t seed);

// Smallest alternation DTD that accepts exactly the children words seen in `tree`.
Dtd gen_dtd_for_tree(const Tree& tree);
// Random rules over t0..t{label_count-1}, root t0.
Dtd gen_random_dtd(std::size_t label_count, std::uint64_t seed);

struct Mutation {
  Doc doc;
  bool changed = false;  // false when no single relabeling breaks validity
  std::size_t node = 0;  // 1-based preorder index of the relabeled node
};

// Relabels one node, using labels of the DTD only, so the result is invalid.
Mutation mutate_invalid(const Doc& doc, const Dtd& dtd, std::uint64_t seed);

}  // namespace xmlstream
