#ifndef SLPX_LOUDS_HPP
#define SLPX_LOUDS_HPP

#include <cstdint>
#include <vector>

#include "slpx/bitvec.hpp"

namespace slpx {

// LOUDS tree: super-root "10" followed by the unary degree "1^d 0" of
// every node in breadth-first order. With n nodes the bit string holds
// n ones and n+1 zeros. Nodes are addressed by BFS rank (1-based); the
// r-th one is node r, and its children occupy the run after the r-th zero.
class Louds {
 public:
  Louds() = default;

  static Louds from_degrees(const std::vector<uint64_t>& bfs_degrees);
  static Louds from_bits(BitVec bits);

  uint64_t nodes() const { return n_nodes_; }
  uint64_t degree(uint64_t r) const;
  // BFS rank of the i-th child of node r; 1 <= i <= degree(r).
  uint64_t child(uint64_t r, uint64_t i) const;

  const BitVec& bits() const { return bits_; }

 private:
  BitVec bits_;
  uint64_t n_nodes_ = 0;
};

}  // namespace slpx

#endif  // SLPX_LOUDS_HPP
