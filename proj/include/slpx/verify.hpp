#ifndef SLPX_VERIFY_HPP
#define SLPX_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "slpx/container.hpp"
#include "slpx/slp.hpp"

namespace slpx {

struct VerifyOptions {
  uint64_t samples = 1000;  // random extractions; ignored when full is set
  bool full = false;
  uint64_t seed = 0x5157e7;
};

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> problems;
  uint64_t extractions = 0;
  uint64_t accesses = 0;

  void fail(std::string msg) {
    ok = false;
    if (problems.size() < 64) problems.push_back(std::move(msg));
  }
};

// Checks an encoding against the grammar it was built from:
//   - per-variable consistency: lengths recomputed from children() must
//     match var_length transitively, with N at the start symbol
//   - the exact space formula for the scheme
//   - sampled (or full) extractions against the naive oracle
//   - the 2 lg N bound on non-SC hops for every sampled access
VerifyResult verify_encoding(const AnyEncoding& enc, const Slp& against,
                             const VerifyOptions& opt);

}  // namespace slpx

#endif  // SLPX_VERIFY_HPP
