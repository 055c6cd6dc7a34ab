#ifndef SLPX_ENCODING_HPP
#define SLPX_ENCODING_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slpx/bitvec.hpp"
#include "slpx/ibs_trie.hpp"
#include "slpx/louds.hpp"
#include "slpx/packed_array.hpp"
#include "slpx/postorder_tree.hpp"
#include "slpx/scd.hpp"
#include "slpx/slp.hpp"
#include "slpx/util.hpp"

namespace slpx {

enum class Scheme : uint8_t { I = 1, II = 2, III = 3 };

const char* scheme_name(Scheme s);

// Raised by the scheme-III builder when the iterative re-sort of the
// SC-paths reaches no self-consistent monotone order.
struct NoMonotoneOrder : Error {
  explicit NoMonotoneOrder(std::string msg) : Error(std::move(msg)) {}
};

struct SpaceReport {
  Scheme scheme;
  std::map<std::string, uint64_t> components;  // exact bits per stored component
  uint64_t core_bits = 0;
  uint64_t formula_bits = 0;        // closed form the core must equal exactly
  uint64_t formula_bound_bits = 0;  // scheme III: closed form with S at its bound
  uint64_t overhead_bits = 0;       // rank/select/excess directories
};

// Data shared by all three encodings, over the renumbered grammar
// (variables of one SC-path hold consecutive ids, topmost first):
//   P[u] = 1  iff u is the last node of its SC-path        (n bits)
//   D[.] per non-last node: 0 iff its non-SC child is left (n-n' bits)
//   G[u1..um] prefix sums of the path's piece decomposition (ceil lg N each)
//   B        concatenated post-order trie bits, 2m-1 per path
// The piece decomposition of <u1> has m parts: the left-branching
// endpoints top-down, then <um>, then the right-branching endpoints
// bottom-up, so G also answers |<u>| for any path node in O(1).
struct EncodingCommon {
  uint64_t n = 0, n_prime = 0, sigma = 0, N = 0, start = 0;
  std::vector<uint8_t> alphabet;
  BitVec P, D, B;
  PackedArray G;  // stores g-1

  struct PathInfo {
    uint64_t r;   // path rank, 1-based
    uint64_t u1;  // topmost node
    uint64_t um;  // last node
    uint64_t m;   // nodes on the path
    uint64_t d0;  // rank0(P, u1-1): D offset of the path
    uint64_t t;   // left-branching non-SC-edges above the last node
  };

  uint32_t sym_width() const { return std::max(1u, ceil_lg(n + sigma)); }

  PathInfo path_of_node(uint64_t u) const;
  PathInfo path_by_rank(uint64_t r) const;

  // Prefix sum g_i of the path's piece decomposition; g(pi, 0) = 0.
  uint64_t g(const PathInfo& pi, uint64_t i) const {
    return i == 0 ? 0 : G.get(pi.u1 + i - 1) + 1;
  }

  // |<u>| for a variable u: the span of u's subtree inside <u1>.
  uint64_t var_length(uint64_t u) const;
  uint64_t sym_length(uint64_t s) const { return s > n ? 1 : var_length(s); }

  // Position of <u>[p] inside <u1(path)>.
  uint64_t entry_offset(const PathInfo& pi, uint64_t u, uint64_t p) const;

  // Endpoint list indices [first..last] covered by u's subtree.
  uint64_t subtree_first_index(const PathInfo& pi, uint64_t u) const;
  uint64_t subtree_last_index(const PathInfo& pi, uint64_t u) const;

  PostOrderTree trie(const PathInfo& pi) const {
    return PostOrderTree(B, 2 * pi.u1 - pi.r, 2 * pi.m - 1);
  }

  // For a non-last node u, the index of its non-SC endpoint in the
  // path's preorder endpoint list v_1..v_{m+1}.
  uint64_t endpoint_index_of_node(const PathInfo& pi, uint64_t u) const;

  uint8_t byte_of_terminal(uint64_t s) const { return alphabet[s - n - 1]; }
};

EncodingCommon build_common(const Slp& renum, const ScDecomposition& dec,
                            const std::vector<uint64_t>& lens);

// Encoding I: endpoints stored directly. R1 holds the non-SC endpoint of
// every non-last node (indexed by rank0(P, u)); R2 holds both children
// of every last node.
struct EncodingI {
  static constexpr Scheme kScheme = Scheme::I;
  EncodingCommon c;
  PackedArray R1, R2;  // symbol ids, stored -1

  static EncodingI build(const Slp& g, const ScDecomposition& dec);
  static EncodingI build(const Slp& g);

  // v_i of the path: the i-th non-SC endpoint in preorder, 1 <= i <= m+1.
  uint64_t endpoint(const EncodingCommon::PathInfo& pi, uint64_t i) const;
  std::pair<uint64_t, uint64_t> children(uint64_t u) const;
  SpaceReport space_report() const;
};

// Encoding II: SC-paths are laid out in breadth-first order of the
// endpoint tree T_E, whose edges mark one chosen incoming non-SC-edge
// per non-root path. Chosen endpoints are answered from the tree, the
// rest from R_E.
struct EncodingII {
  static constexpr Scheme kScheme = Scheme::II;
  EncodingCommon c;
  PackedArray RE;  // n+1 non-chosen endpoints in list order, stored -1
  BitVec ME;       // marks chosen entries of the conceptual list L
  Louds TE;

  static EncodingII build(const Slp& g, const ScDecomposition& dec);
  static EncodingII build(const Slp& g);

  uint64_t endpoint(const EncodingCommon::PathInfo& pi, uint64_t i) const;
  std::pair<uint64_t, uint64_t> children(uint64_t u) const;
  SpaceReport space_report() const;
};

// Encoding III: terminals are numbered [1..sigma] and variables
// [sigma+1..n+sigma]; each path's chosen endpoint (left child of its
// last node) is stored unary in S under a path order that makes the
// chosen sequence non-decreasing; everything else sits in RX.
struct EncodingIII {
  static constexpr Scheme kScheme = Scheme::III;
  EncodingCommon c;
  PackedArray RX;  // n non-chosen endpoints in list order, local ids, stored -1
  BitVec S;        // unary diffs of the chosen sequence, '1' separators
  uint64_t fixed_point_rounds = 0;

  static EncodingIII build(const Slp& g, const ScDecomposition& dec);
  static EncodingIII build(const Slp& g);

  uint64_t endpoint(const EncodingCommon::PathInfo& pi, uint64_t i) const;
  std::pair<uint64_t, uint64_t> children(uint64_t u) const;
  SpaceReport space_report() const;

  // terminal-first numbering <-> default symbol ids
  uint64_t to_default(uint64_t local) const {
    return local <= c.sigma ? c.n + local : local - c.sigma;
  }
  uint64_t to_local(uint64_t sym) const {
    return sym > c.n ? sym - c.n : sym + c.sigma;
  }
};

// --- shared query helpers -------------------------------------------------

// Preorder endpoint index + relative offset for a position inside <u1>.
struct Located {
  uint64_t s;       // endpoint index in [1..m+1]
  uint64_t offset;  // position within <v_s>
};

struct QueryStats {
  uint64_t non_sc_hops = 0;
  uint64_t trie_nodes = 0;
  uint64_t expanded_symbols = 0;
  uint64_t stack_max = 0;
};

// Prefix sum of |<v_1..v_i>| from the stored m piece sums: pieces before
// the middle shift by 0, the middle needs |<v_{t+1}>|, later pieces shift
// by one.
template <class Enc>
uint64_t prefix_sum(const Enc& e, const EncodingCommon::PathInfo& pi, uint64_t i) {
  if (i > pi.m + 1) throw Error("endpoint index out of range");
  if (i <= pi.t) return e.c.g(pi, i);
  if (i == pi.t + 1) return e.c.g(pi, pi.t) + e.c.sym_length(e.endpoint(pi, pi.t + 1));
  return e.c.g(pi, i - 1);
}

template <class Enc>
uint64_t branch_endpoint(const Enc& e, uint64_t r, uint64_t i) {
  const auto pi = e.c.path_by_rank(r);
  if (i < 1 || i > pi.m + 1) throw Error("endpoint index out of range");
  return e.endpoint(pi, i);
}

// Interval-biased search over the path's trie, then split of the middle
// piece <um> between the last node's two children.
template <class Enc>
Located biased_locate(const Enc& e, const EncodingCommon::PathInfo& pi, uint64_t pprime,
                      QueryStats* st) {
  const auto& c = e.c;
  const PostOrderTree t = c.trie(pi);
  const auto res =
      interval_search(t, [&](uint64_t i) { return c.g(pi, i); }, pi.m, pprime);
  if (st) st->trie_nodes += res.visited;
  const uint64_t piece = res.k + 1;
  if (piece <= pi.t) return {piece, pprime - c.g(pi, piece - 1)};
  if (piece == pi.t + 1) {
    const uint64_t off = pprime - c.g(pi, pi.t);
    const uint64_t left_len = c.sym_length(e.endpoint(pi, pi.t + 1));
    if (off <= left_len) return {pi.t + 1, off};
    return {pi.t + 2, off - left_len};
  }
  return {piece + 1, pprime - c.g(pi, piece - 1)};
}

template <class Enc>
Located biased_locate(const Enc& e, uint64_t r, uint64_t pprime, QueryStats* st = nullptr) {
  return biased_locate(e, e.c.path_by_rank(r), pprime, st);
}

}  // namespace slpx

#endif  // SLPX_ENCODING_HPP
