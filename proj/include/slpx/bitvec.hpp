#ifndef SLPX_BITVEC_HPP
#define SLPX_BITVEC_HPP

#include <cstdint>
#include <vector>

namespace slpx {

// Bit string with constant-time rank/select.
//
// Positions are 1-based throughout, mirroring the usual rank/select
// identities: rank(b, i) counts occurrences of b in B[1..i], select(b, j)
// is the position of the j-th b. Out-of-range arguments follow the
// boundary conventions
//   rank(b, i)   = 0 for i < 1, total count of b for i > size
//   select(b, j) = 0 for j <= 0, size+1 for j > count of b.
//
// Directory layout: cumulative one-counts every 512-bit block, relative
// counts every 64-bit word, and a sampled position for every 512-th one
// and zero. An optional excess index (per-word prefix minima) accelerates
// bwdsearch-style backward scans used by the post-order trees.
class BitVec {
 public:
  BitVec() = default;

  void push_back(bool bit);
  void append(const BitVec& other);
  // Finalizes the rank/select directories. Must be called once after the
  // last push_back and before any query.
  void build();
  void build_excess();

  uint64_t size() const { return nbits_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return nbits_ - ones_; }

  bool bit(uint64_t i) const {  // i in [1..size]
    return (words_[(i - 1) >> 6] >> ((i - 1) & 63)) & 1;
  }

  uint64_t rank1(int64_t i) const;
  uint64_t rank0(int64_t i) const;
  uint64_t rank(bool b, int64_t i) const { return b ? rank1(i) : rank0(i); }
  uint64_t select1(int64_t j) const;
  uint64_t select0(int64_t j) const;
  uint64_t select(bool b, int64_t j) const { return b ? select1(j) : select0(j); }

  // Excess of the prefix B[1..i]: rank0(i) - rank1(i). excess(0) == 0.
  int64_t excess(uint64_t i) const {
    return static_cast<int64_t>(rank0(static_cast<int64_t>(i))) -
           static_cast<int64_t>(rank1(static_cast<int64_t>(i)));
  }

  // Largest position j in [lo..from] with excess(j) == target, or 0 if none.
  // Skips whole words via the excess index; requires build_excess().
  uint64_t bwdsearch_excess(uint64_t lo, uint64_t from, int64_t target) const;

  // LSB-first packed payload, ceil(size/8) bytes.
  std::vector<uint8_t> packed_bytes() const;
  static BitVec from_packed(const std::vector<uint8_t>& bytes, uint64_t nbits);

  // Bits spent on rank/select/excess directories (space accounting).
  uint64_t directory_bits() const;

  bool operator==(const BitVec& o) const {
    return nbits_ == o.nbits_ && words_ == o.words_;
  }

 private:
  static constexpr uint64_t kWordsPerBlock = 8;  // 512-bit blocks

  std::vector<uint64_t> words_;
  uint64_t nbits_ = 0;
  uint64_t ones_ = 0;
  bool built_ = false;

  std::vector<uint64_t> block_ones_;  // ones before each block; size nblocks+1
  std::vector<uint16_t> word_ones_;   // ones before word within its block
  std::vector<uint64_t> sel1_blk_;    // block holding the (512k+1)-th one
  std::vector<uint64_t> sel0_blk_;
  std::vector<int8_t> exc_min_;       // per word: min prefix excess delta
  std::vector<int8_t> exc_tot_;       // per word: total excess delta

  uint64_t nwords() const { return (nbits_ + 63) >> 6; }
  uint64_t select_impl(bool b, uint64_t j) const;
};

}  // namespace slpx

#endif  // SLPX_BITVEC_HPP
