#include "slpx/postorder_tree.hpp"

#include "slpx/util.hpp"

namespace slpx {

bool PostOrderTree::isleaf(uint64_t v) const {
  if (v < 1 || v > len_) throw Error("node out of range");
  return !bv_->bit(lo_ + v - 1);
}

uint64_t PostOrderTree::rchild(uint64_t v) const {
  if (isleaf(v)) throw Error("child query on a leaf");
  return v - 1;
}

uint64_t PostOrderTree::lchild(uint64_t v) const {
  if (isleaf(v)) throw Error("child query on a leaf");
  const uint64_t j = bwdsearch(v - 1, -1);
  if (j == 0) throw Error("post-order tree structure corrupt");
  return j;
}

uint64_t PostOrderTree::rmleaf(uint64_t v) const {
  if (v < 1 || v > len_) throw Error("node out of range");
  const uint64_t zeros_before = bv_->rank0(static_cast<int64_t>(lo_) - 1);
  const uint64_t k = bv_->rank0(static_cast<int64_t>(lo_ + v - 1)) - zeros_before;
  return bv_->select0(static_cast<int64_t>(zeros_before + k)) - lo_ + 1;
}

uint64_t PostOrderTree::leafrank(uint64_t v) const {
  if (v < 1 || v > len_) throw Error("node out of range");
  return bv_->rank0(static_cast<int64_t>(lo_ + v - 1)) -
         bv_->rank0(static_cast<int64_t>(lo_) - 1);
}

uint64_t PostOrderTree::bwdsearch(uint64_t i, int64_t d) const {
  if (i < 1 || i > len_) throw Error("position out of range");
  const int64_t base = bv_->excess(lo_ - 1);
  const int64_t target = local_excess(i) + d;
  if (target < 1) return 0;  // local excess never drops below 1
  const uint64_t g = bv_->bwdsearch_excess(lo_, lo_ + i - 1, base + target);
  return g == 0 ? 0 : g - lo_ + 1;
}

bool PostOrderTree::valid_shape() const {
  if (len_ == 0 || len_ % 2 == 0) return false;
  int64_t e = 0;
  for (uint64_t i = 1; i <= len_; ++i) {
    e += bv_->bit(lo_ + i - 1) ? -1 : +1;
    if (e < 1) return false;
  }
  return e == 1;
}

}  // namespace slpx
