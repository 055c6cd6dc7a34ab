#include "slpx/bitvec.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "slpx/util.hpp"

namespace slpx {

namespace {

// 1-based position of the k-th set bit of w; k <= popcount(w).
uint32_t select_in_word(uint64_t w, uint32_t k) {
  for (uint32_t i = 1; i < k; ++i) w &= w - 1;
  return static_cast<uint32_t>(std::countr_zero(w)) + 1;
}

}  // namespace

void BitVec::push_back(bool bit) {
  if ((nbits_ & 63) == 0) words_.push_back(0);
  if (bit) words_.back() |= uint64_t(1) << (nbits_ & 63);
  ++nbits_;
  built_ = false;
}

void BitVec::append(const BitVec& other) {
  for (uint64_t i = 1; i <= other.size(); ++i) push_back(other.bit(i));
}

void BitVec::build() {
  const uint64_t nw = nwords();
  const uint64_t nblocks = (nw + kWordsPerBlock - 1) / kWordsPerBlock;
  block_ones_.assign(nblocks + 2, 0);
  word_ones_.assign(nw + 1, 0);

  uint64_t cum = 0;
  for (uint64_t w = 0; w < nw; ++w) {
    const uint64_t blk = w / kWordsPerBlock;
    if (w % kWordsPerBlock == 0) block_ones_[blk] = cum;
    word_ones_[w] = static_cast<uint16_t>(cum - block_ones_[blk]);
    cum += std::popcount(words_[w]);
  }
  for (uint64_t b = nblocks; b < block_ones_.size(); ++b) block_ones_[b] = cum;
  if (nw % kWordsPerBlock == 0 && nw / kWordsPerBlock < block_ones_.size()) {
    block_ones_[nw / kWordsPerBlock] = cum;
  }
  word_ones_[nw] = static_cast<uint16_t>(cum - block_ones_[nw / kWordsPerBlock]);
  ones_ = cum;

  sel1_blk_.clear();
  sel0_blk_.clear();
  uint64_t next1 = 1, next0 = 1;
  for (uint64_t blk = 0; blk * 512 < nbits_; ++blk) {
    const uint64_t bits_end = std::min((blk + 1) * 512, nbits_);
    const uint64_t ones_end = block_ones_[blk + 1];
    const uint64_t zeros_end = bits_end - ones_end;
    while (next1 <= ones_end) {
      sel1_blk_.push_back(blk);
      next1 += 512;
    }
    while (next0 <= zeros_end) {
      sel0_blk_.push_back(blk);
      next0 += 512;
    }
  }
  built_ = true;
}

void BitVec::build_excess() {
  const uint64_t nw = nwords();
  exc_min_.assign(nw, 0);
  exc_tot_.assign(nw, 0);
  for (uint64_t w = 0; w < nw; ++w) {
    int8_t cur = 0, mn = 127;
    const uint64_t word = words_[w];
    for (uint32_t k = 0; k < 64; ++k) {
      cur = static_cast<int8_t>(cur + (((word >> k) & 1) ? -1 : +1));
      mn = std::min(mn, cur);
    }
    exc_min_[w] = mn;
    exc_tot_[w] = cur;
  }
}

uint64_t BitVec::rank1(int64_t i) const {
  assert(built_);
  if (i < 1) return 0;
  const uint64_t ii = std::min<uint64_t>(static_cast<uint64_t>(i), nbits_);
  const uint64_t w = ii >> 6, r = ii & 63;
  uint64_t cnt = block_ones_[w / kWordsPerBlock] + word_ones_[w];
  if (r) cnt += std::popcount(words_[w] & ((uint64_t(1) << r) - 1));
  return cnt;
}

uint64_t BitVec::rank0(int64_t i) const {
  if (i < 1) return 0;
  const uint64_t ii = std::min<uint64_t>(static_cast<uint64_t>(i), nbits_);
  return ii - rank1(i);
}

uint64_t BitVec::select1(int64_t j) const {
  if (j <= 0) return 0;
  if (static_cast<uint64_t>(j) > ones_) return nbits_ + 1;
  return select_impl(true, static_cast<uint64_t>(j));
}

uint64_t BitVec::select0(int64_t j) const {
  if (j <= 0) return 0;
  if (static_cast<uint64_t>(j) > zeros()) return nbits_ + 1;
  return select_impl(false, static_cast<uint64_t>(j));
}

uint64_t BitVec::select_impl(bool b, uint64_t j) const {
  assert(built_);
  const auto& samples = b ? sel1_blk_ : sel0_blk_;
  const uint64_t nblocks = (nwords() + kWordsPerBlock - 1) / kWordsPerBlock;
  auto count_before_block = [&](uint64_t blk) -> uint64_t {
    const uint64_t bits_before = std::min(blk * 512, nbits_);
    return b ? block_ones_[blk] : bits_before - block_ones_[blk];
  };
  uint64_t lo = samples[(j - 1) / 512];
  uint64_t hi = ((j - 1) / 512 + 1 < samples.size()) ? samples[(j - 1) / 512 + 1] : nblocks - 1;
  while (lo < hi) {
    const uint64_t mid = (lo + hi + 1) / 2;
    if (count_before_block(mid) < j) lo = mid;
    else hi = mid - 1;
  }
  uint64_t rem = j - count_before_block(lo);
  uint64_t w = lo * kWordsPerBlock;
  for (;; ++w) {
    assert(w < nwords());
    const uint64_t valid = std::min<uint64_t>(64, nbits_ - w * 64);
    const uint64_t mask = (valid == 64) ? ~uint64_t(0) : ((uint64_t(1) << valid) - 1);
    const uint64_t word = b ? words_[w] : (~words_[w] & mask);
    const uint64_t pc = std::popcount(word);
    if (rem <= pc) return w * 64 + select_in_word(word, static_cast<uint32_t>(rem));
    rem -= pc;
  }
}

uint64_t BitVec::bwdsearch_excess(uint64_t lo, uint64_t from, int64_t target) const {
  assert(!exc_min_.empty() || nbits_ == 0);
  if (from < lo || lo < 1) return 0;
  uint64_t g = from;
  int64_t cur = excess(g);
  if (cur == target) return g;
  while (g > lo) {
    if ((g & 63) == 0 && g >= lo + 64) {
      // whole word (g-64..g] lies in range; skip it when target unreachable
      const uint64_t w = (g >> 6) - 1;
      const int64_t base = cur - exc_tot_[w];
      if (target < base + exc_min_[w]) {
        cur = base;
        g -= 64;
        if (cur == target) return g >= lo ? g : 0;
        continue;
      }
    }
    cur -= bit(g) ? -1 : +1;
    --g;
    if (cur == target) return g;
  }
  return 0;
}

std::vector<uint8_t> BitVec::packed_bytes() const {
  std::vector<uint8_t> out((nbits_ + 7) / 8, 0);
  for (uint64_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<uint8_t>((words_[i >> 3] >> ((i & 7) * 8)) & 0xff);
  }
  return out;
}

BitVec BitVec::from_packed(const std::vector<uint8_t>& bytes, uint64_t nbits) {
  if (bytes.size() != (nbits + 7) / 8) throw ParseError("bit payload size mismatch");
  BitVec bv;
  bv.nbits_ = nbits;
  bv.words_.assign((nbits + 63) / 64, 0);
  for (uint64_t i = 0; i < bytes.size(); ++i) {
    bv.words_[i >> 3] |= static_cast<uint64_t>(bytes[i]) << ((i & 7) * 8);
  }
  if (nbits & 63) {
    const uint64_t mask = (uint64_t(1) << (nbits & 63)) - 1;
    if (!bv.words_.empty() && (bv.words_.back() & ~mask) != 0) {
      throw ParseError("nonzero padding bits in payload");
    }
  }
  bv.build();
  return bv;
}

uint64_t BitVec::directory_bits() const {
  return block_ones_.size() * 64 + word_ones_.size() * 16 +
         (sel1_blk_.size() + sel0_blk_.size()) * 64 +
         (exc_min_.size() + exc_tot_.size()) * 8;
}

}  // namespace slpx
