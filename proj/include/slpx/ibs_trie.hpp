#ifndef SLPX_IBS_TRIE_HPP
#define SLPX_IBS_TRIE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "slpx/bitvec.hpp"
#include "slpx/postorder_tree.hpp"
#include "slpx/util.hpp"

namespace slpx {

// Compacted binary trie over the fixed-width binary codes of a strictly
// increasing sequence g_1 < ... < g_m, used for interval-biased search:
// the query p lands in (g_k..g_{k+1}] after visiting a number of nodes
// logarithmic in g_m / (g_{k+1} - g_k).
//
// Codes use width ceil(lg g_m) (width 1 for g_m = 1); the bits common to
// the first and last code are stripped before building. The trie is a
// full binary tree with m leaves emitted as post-order bits: left
// subtree, right subtree, then a 1; a single value emits "0".

// Appends the 2m-1 trie bits for values val(1..m) onto `out`.
template <class GetVal>
void append_trie_bits(BitVec& out, GetVal&& val, uint64_t m) {
  if (m == 0) throw Error("empty sequence");
  for (uint64_t i = 2; i <= m; ++i) {
    if (val(i - 1) >= val(i)) throw Error("sequence not strictly increasing");
  }
  // recurse on [lo..hi], splitting at the highest differing bit
  struct Rec {
    BitVec& out;
    GetVal& val;
    void build(uint64_t lo, uint64_t hi) {
      if (lo == hi) {
        out.push_back(false);
        return;
      }
      const uint64_t diff = val(lo) ^ val(hi);
      const uint64_t split_bit = floor_lg(diff);  // values sorted, so diff != 0
      // first index whose split bit is 1
      uint64_t a = lo, b = hi;
      while (a < b) {
        const uint64_t mid = a + (b - a) / 2;
        if ((val(mid) >> split_bit) & 1) b = mid;
        else a = mid + 1;
      }
      build(lo, a - 1);
      build(a, hi);
      out.push_back(true);
    }
  };
  Rec rec{out, val};
  rec.build(1, m);
}

inline BitVec build_trie_bits(const std::vector<uint64_t>& g) {
  BitVec out;
  append_trie_bits(out, [&](uint64_t i) { return g[i - 1]; }, g.size());
  out.build();
  return out;
}

struct IntervalSearchResult {
  uint64_t k = 0;        // p lies in (g_k..g_{k+1}]
  uint64_t visited = 0;  // internal trie nodes inspected
};

// Descends from the root; at an internal node u the boundary pair is
// i = leafrank(rmleaf(lchild(u))), and the walk goes left when
// p <= g_i, right when p > g_{i+1}. p <= g_1 answers 0 with no visit.
template <class GetVal>
IntervalSearchResult interval_search(const PostOrderTree& t, GetVal&& g, uint64_t m,
                                     uint64_t p) {
  if (p < 1 || p > g(m)) throw Error("query position out of range");
  IntervalSearchResult res;
  if (p <= g(1)) return res;
  uint64_t u = t.root();
  for (;;) {
    ++res.visited;
    const uint64_t lc = t.lchild(u);
    const uint64_t i = t.leafrank(t.rmleaf(lc));
    if (p <= g(i)) {
      u = lc;
    } else if (p > g(i + 1)) {
      u = t.rchild(u);
    } else {
      res.k = i;
      return res;
    }
  }
}

}  // namespace slpx

#endif  // SLPX_IBS_TRIE_HPP
