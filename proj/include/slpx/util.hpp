#ifndef SLPX_UTIL_HPP
#define SLPX_UTIL_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace slpx {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file or serialized container.
struct ParseError : Error {
  using Error::Error;
};

// floor(lg x) for x >= 1, computed on the integer (position of highest set bit).
inline uint32_t floor_lg(uint64_t x) {
  return 63u - static_cast<uint32_t>(std::countl_zero(x));
}

// ceil(lg x) for x >= 1; ceil_lg(1) == 0.
inline uint32_t ceil_lg(uint64_t x) {
  return x <= 1 ? 0u : 64u - static_cast<uint32_t>(std::countl_zero(x - 1));
}

// Exact test of count <= 2*log2(n) over the reals: 2^count <= n^2.
inline bool within_two_lg(uint64_t count, uint64_t n) {
  if (count > 126) return false;
  return (static_cast<unsigned __int128>(1) << count) <=
         static_cast<unsigned __int128>(n) * n;
}

}  // namespace slpx

#endif  // SLPX_UTIL_HPP
