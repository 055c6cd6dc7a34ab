#ifndef SLPX_ACCESS_HPP
#define SLPX_ACCESS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slpx/encoding.hpp"

namespace slpx {

namespace detail {

// Appends <sym> to out. The caller guarantees the expansion fits the
// remaining demand; every visited symbol is charged to the stats.
template <class Enc>
void expand_full(const Enc& e, uint64_t sym, std::string& out, QueryStats& st) {
  std::vector<uint64_t> stack{sym};
  while (!stack.empty()) {
    const uint64_t s = stack.back();
    stack.pop_back();
    ++st.expanded_symbols;
    if (s > e.c.n) {
      out.push_back(static_cast<char>(e.c.byte_of_terminal(s)));
    } else {
      const auto [l, r] = e.children(s);
      stack.push_back(r);
      stack.push_back(l);
    }
  }
}

// Appends <sym>[1..len] for len < |<sym>|. Descends along SC-paths to the
// boundary, fully expanding everything left of it, so the marginal cost
// stays logarithmic instead of one step per derivation-tree level.
template <class Enc>
void expand_prefix(const Enc& e, uint64_t sym, uint64_t len, std::string& out,
                   QueryStats& st) {
  uint64_t v = sym, c = len;
  for (;;) {
    if (v > e.c.n) {
      out.push_back(static_cast<char>(e.c.byte_of_terminal(v)));
      return;
    }
    const auto pi = e.c.path_of_node(v);
    const uint64_t boundary = e.c.entry_offset(pi, v, c);
    const Located loc = biased_locate(e, pi, boundary, &st);
    ++st.non_sc_hops;
    const uint64_t first = e.c.subtree_first_index(pi, v);
    for (uint64_t i = first; i < loc.s; ++i) expand_full(e, e.endpoint(pi, i), out, st);
    const uint64_t vs = e.endpoint(pi, loc.s);
    if (loc.offset == e.c.sym_length(vs)) {
      expand_full(e, vs, out, st);
      return;
    }
    v = vs;
    c = loc.offset;
  }
}

}  // namespace detail

// T[p] in O(log N): per SC-path, one interval-biased search then a hop
// over the located non-SC-edge.
template <class Enc>
std::pair<uint8_t, QueryStats> access(const Enc& e, uint64_t p) {
  if (p < 1 || p > e.c.N) throw Error("position out of range");
  QueryStats st;
  uint64_t x = e.c.start, pos = p;
  for (;;) {
    const auto pi = e.c.path_of_node(x);
    const uint64_t pprime = e.c.entry_offset(pi, x, pos);
    const Located loc = biased_locate(e, pi, pprime, &st);
    const uint64_t v = e.endpoint(pi, loc.s);
    ++st.non_sc_hops;
    if (v > e.c.n) {
      if (loc.offset != 1) throw Error("terminal offset out of range");
      return {e.c.byte_of_terminal(v), st};
    }
    x = v;
    pos = loc.offset;
  }
}

// T[p..q] in O(log N + q-p): descend to p pushing (endpoint index, last
// index under the entry node) per SC-path, then unwind expanding the
// following siblings until q-p+1 bytes are out. The sibling crossing the
// right boundary is emitted via expand_prefix.
template <class Enc>
std::pair<std::string, QueryStats> extract(const Enc& e, uint64_t p, uint64_t q) {
  if (p < 1 || p > q || q > e.c.N) throw Error("range out of bounds");
  QueryStats st;
  const uint64_t want = q - p + 1;
  std::string out;
  out.reserve(want);

  struct Frame {
    EncodingCommon::PathInfo pi;
    uint64_t s;
    uint64_t z;
  };
  std::vector<Frame> frames;

  uint64_t x = e.c.start, pos = p;
  for (;;) {
    const auto pi = e.c.path_of_node(x);
    const uint64_t pprime = e.c.entry_offset(pi, x, pos);
    const Located loc = biased_locate(e, pi, pprime, &st);
    frames.push_back(Frame{pi, loc.s, e.c.subtree_last_index(pi, x)});
    st.stack_max = std::max<uint64_t>(st.stack_max, frames.size());
    const uint64_t v = e.endpoint(pi, loc.s);
    ++st.non_sc_hops;
    if (v > e.c.n) {
      out.push_back(static_cast<char>(e.c.byte_of_terminal(v)));
      break;
    }
    x = v;
    pos = loc.offset;
  }

  while (out.size() < want && !frames.empty()) {
    Frame& f = frames.back();
    if (f.s >= f.z) {
      frames.pop_back();
      continue;
    }
    ++f.s;
    const uint64_t v = e.endpoint(f.pi, f.s);
    const uint64_t need = want - out.size();
    const uint64_t lv = e.c.sym_length(v);
    if (lv <= need) {
      detail::expand_full(e, v, out, st);
    } else {
      detail::expand_prefix(e, v, need, out, st);
    }
  }
  if (out.size() != want) throw Error("extraction fell short of the requested range");
  return {std::move(out), st};
}

}  // namespace slpx

#endif  // SLPX_ACCESS_HPP
