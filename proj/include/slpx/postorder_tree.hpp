#ifndef SLPX_POSTORDER_TREE_HPP
#define SLPX_POSTORDER_TREE_HPP

#include <cstdint>

#include "slpx/bitvec.hpp"

namespace slpx {

// Full binary tree stored one bit per node in post-order: leaf = 0,
// internal = 1. A node is identified by its post-order rank (1-based,
// local to the slice). The view covers positions [lo..lo+len-1] of a
// shared bit string, so many trees can live packed in one BitVec.
//
// The excess E[i] = rank0(i) - rank1(i) over the slice stays >= 1 on
// every nonempty prefix and ends at 1; lchild is answered by a backward
// excess search on that profile.
class PostOrderTree {
 public:
  PostOrderTree(const BitVec& bv, uint64_t lo, uint64_t len)
      : bv_(&bv), lo_(lo), len_(len) {}

  uint64_t size() const { return len_; }
  uint64_t root() const { return len_; }
  uint64_t leaves() const { return (len_ + 1) / 2; }

  bool isleaf(uint64_t v) const;
  uint64_t lchild(uint64_t v) const;
  uint64_t rchild(uint64_t v) const;
  uint64_t rmleaf(uint64_t v) const;
  uint64_t leafrank(uint64_t v) const;

  // Maximum j <= i with E[j] = E[i] + d (d < 0); 0 when no such j exists.
  uint64_t bwdsearch(uint64_t i, int64_t d = -1) const;

  // Shape check: len odd, expect_leaves zeros, prefix excess >= 1.
  bool valid_shape() const;

 private:
  const BitVec* bv_;
  uint64_t lo_;
  uint64_t len_;

  int64_t local_excess(uint64_t i) const {
    return bv_->excess(lo_ + i - 1) - bv_->excess(lo_ - 1);
  }
};

}  // namespace slpx

#endif  // SLPX_POSTORDER_TREE_HPP
