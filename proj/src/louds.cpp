#include "slpx/louds.hpp"

#include "slpx/util.hpp"

namespace slpx {

Louds Louds::from_degrees(const std::vector<uint64_t>& bfs_degrees) {
  Louds t;
  t.n_nodes_ = bfs_degrees.size();
  t.bits_.push_back(true);
  t.bits_.push_back(false);
  for (uint64_t d : bfs_degrees) {
    for (uint64_t i = 0; i < d; ++i) t.bits_.push_back(true);
    t.bits_.push_back(false);
  }
  t.bits_.build();
  return t;
}

Louds Louds::from_bits(BitVec bits) {
  Louds t;
  t.bits_ = std::move(bits);
  t.bits_.build();
  if (t.bits_.size() != t.bits_.ones() * 2 + 1 || t.bits_.size() < 2 ||
      !t.bits_.bit(1) || t.bits_.bit(2)) {
    throw ParseError("malformed LOUDS bit string");
  }
  t.n_nodes_ = t.bits_.ones();
  return t;
}

uint64_t Louds::degree(uint64_t r) const {
  if (r < 1 || r > n_nodes_) throw Error("node rank out of range");
  return bits_.select0(static_cast<int64_t>(r + 1)) -
         bits_.select0(static_cast<int64_t>(r)) - 1;
}

uint64_t Louds::child(uint64_t r, uint64_t i) const {
  const uint64_t d = degree(r);
  if (i < 1 || i > d) throw Error("child index exceeds degree");
  return bits_.rank1(static_cast<int64_t>(bits_.select0(static_cast<int64_t>(r)) + i));
}

}  // namespace slpx
