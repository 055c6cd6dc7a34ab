#ifndef SLPX_PACKED_ARRAY_HPP
#define SLPX_PACKED_ARRAY_HPP

#include <cstdint>
#include <vector>

#include "slpx/util.hpp"

namespace slpx {

// Fixed-width integer array packed LSB-first; indices are 1-based to
// mirror the rank/select identities used around it.
class PackedArray {
 public:
  PackedArray() = default;
  explicit PackedArray(uint32_t width) : width_(width) {
    if (width < 1 || width > 64) throw Error("packed array width out of range");
  }

  void push_back(uint64_t v) {
    if (width_ < 64 && (v >> width_) != 0) throw Error("value exceeds packed width");
    const uint64_t pos = count_ * width_;
    const uint64_t w = pos >> 6, off = pos & 63;
    if (words_.size() < ((pos + width_ + 63) >> 6)) words_.resize((pos + width_ + 63) >> 6, 0);
    words_[w] |= v << off;
    if (off + width_ > 64) words_[w + 1] |= v >> (64 - off);
    ++count_;
  }

  uint64_t get(uint64_t i) const {  // i in [1..size]
    const uint64_t pos = (i - 1) * width_;
    const uint64_t w = pos >> 6, off = pos & 63;
    uint64_t v = words_[w] >> off;
    if (off + width_ > 64) v |= words_[w + 1] << (64 - off);
    return width_ == 64 ? v : (v & ((uint64_t(1) << width_) - 1));
  }

  uint64_t size() const { return count_; }
  uint32_t width() const { return width_; }
  uint64_t bits() const { return count_ * width_; }

  std::vector<uint8_t> packed_bytes() const {
    std::vector<uint8_t> out((bits() + 7) / 8, 0);
    for (uint64_t i = 0; i < out.size(); ++i) {
      out[i] = static_cast<uint8_t>((words_[i >> 3] >> ((i & 7) * 8)) & 0xff);
    }
    return out;
  }

  static PackedArray from_packed(const std::vector<uint8_t>& bytes, uint32_t width,
                                 uint64_t count) {
    const uint64_t nbits = width * count;
    if (bytes.size() != (nbits + 7) / 8) throw ParseError("packed array payload size mismatch");
    PackedArray a(width);
    a.count_ = count;
    a.words_.assign((nbits + 63) / 64, 0);
    for (uint64_t i = 0; i < bytes.size(); ++i) {
      a.words_[i >> 3] |= static_cast<uint64_t>(bytes[i]) << ((i & 7) * 8);
    }
    if (nbits & 63) {
      const uint64_t mask = (uint64_t(1) << (nbits & 63)) - 1;
      if (!a.words_.empty() && (a.words_.back() & ~mask) != 0) {
        throw ParseError("nonzero padding bits in payload");
      }
    }
    return a;
  }

  bool operator==(const PackedArray& o) const {
    return width_ == o.width_ && count_ == o.count_ && words_ == o.words_;
  }

 private:
  uint32_t width_ = 1;
  uint64_t count_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace slpx

#endif  // SLPX_PACKED_ARRAY_HPP
