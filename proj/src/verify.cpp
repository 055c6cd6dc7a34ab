#include "slpx/verify.hpp"

#include <algorithm>
#include <random>

#include "slpx/access.hpp"
#include "slpx/util.hpp"

namespace slpx {

namespace {

// Expansion lengths recomputed from the encoded children() graph alone,
// with cycle detection; 0 marks "in progress".
bool recompute_lengths(const AnyEncoding& enc, std::vector<uint64_t>& out,
                       VerifyResult& res) {
  const auto& c = common_of(enc);
  out.assign(c.n + 1, UINT64_MAX);
  std::vector<uint8_t> state(c.n + 1, 0);
  for (uint64_t root = 1; root <= c.n; ++root) {
    if (state[root] == 2) continue;
    std::vector<std::pair<uint64_t, int>> stack{{root, 0}};
    state[root] = 1;
    while (!stack.empty()) {
      auto& [v, k] = stack.back();
      if (k == 2) {
        const auto [l, r] = children_any(enc, v);
        const auto len = [&](uint64_t s) { return s > c.n ? uint64_t(1) : out[s]; };
        uint64_t sum = 0;
        if (__builtin_add_overflow(len(l), len(r), &sum)) {
          res.fail("length overflow at variable " + std::to_string(v));
          return false;
        }
        out[v] = sum;
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const auto [l, r] = children_any(enc, v);
      const uint64_t ch = (k == 0) ? l : r;
      ++k;
      if (ch > c.n) continue;
      if (state[ch] == 1) {
        res.fail("cycle through variable " + std::to_string(ch) + " in encoded rules");
        return false;
      }
      if (state[ch] == 0) {
        state[ch] = 1;
        stack.push_back({ch, 0});
      }
    }
  }
  return true;
}

}  // namespace

VerifyResult verify_encoding(const AnyEncoding& enc, const Slp& against,
                             const VerifyOptions& opt) {
  VerifyResult res;
  const auto& c = common_of(enc);

  if (!validate(against).empty()) {
    res.fail("reference grammar is invalid");
    return res;
  }
  const auto lens = expansion_lengths(against);
  const uint64_t N = lens[against.start];
  if (c.N != N) {
    res.fail("text length mismatch: container says " + std::to_string(c.N) +
             ", grammar derives " + std::to_string(N));
    return res;
  }
  if (c.n != against.n || c.sigma != against.sigma) {
    res.fail("symbol counts differ from the reference grammar");
    return res;
  }

  // transitive length consistency over the encoded rules
  std::vector<uint64_t> enc_len;
  if (recompute_lengths(enc, enc_len, res)) {
    for (uint64_t v = 1; v <= c.n && res.ok; ++v) {
      uint64_t stored = 0;
      try {
        stored = std::visit([&](const auto& e) { return e.c.var_length(v); }, enc);
      } catch (const Error& err) {
        res.fail(std::string("var_length failed at ") + std::to_string(v) + ": " + err.what());
        break;
      }
      if (stored != enc_len[v]) {
        res.fail("length mismatch at variable " + std::to_string(v) + ": stored " +
                 std::to_string(stored) + ", children sum " + std::to_string(enc_len[v]));
      }
    }
    if (res.ok && enc_len[c.start] != c.N) {
      res.fail("start symbol does not derive N characters");
    }
  }

  // exact space accounting
  const SpaceReport rep = space_report_of(enc);
  if (rep.core_bits != rep.formula_bits) {
    res.fail("space formula violated: core " + std::to_string(rep.core_bits) + " != formula " +
             std::to_string(rep.formula_bits));
  }
  if (rep.formula_bound_bits < rep.formula_bits) {
    res.fail("space exceeds the closed-form bound");
  }

  if (!res.ok) return res;

  // extraction vs the naive oracle + hop bound on accesses
  std::mt19937_64 rng(opt.seed);
  const auto check_extract = [&](uint64_t p, uint64_t q) {
    try {
      const auto [got, st] = extract_any(enc, p, q);
      (void)st;
      const std::string want = naive_extract(against, lens, p, q);
      ++res.extractions;
      if (got != want) {
        res.fail("extract(" + std::to_string(p) + "," + std::to_string(q) + ") mismatch");
      }
    } catch (const Error& err) {
      res.fail("extract(" + std::to_string(p) + "," + std::to_string(q) + ") failed: " +
               err.what());
    }
  };
  const auto check_access = [&](uint64_t p) {
    try {
      const auto [got, st] = access_any(enc, p);
      ++res.accesses;
      if (got != naive_access(against, lens, p)) {
        res.fail("access(" + std::to_string(p) + ") mismatch");
      }
      if (!within_two_lg(st.non_sc_hops, N)) {
        res.fail("access(" + std::to_string(p) + ") crossed " + std::to_string(st.non_sc_hops) +
                 " non-SC-edges, above 2 lg N");
      }
    } catch (const Error& err) {
      res.fail("access(" + std::to_string(p) + ") failed: " + err.what());
    }
  };

  if (opt.full && N <= 256) {
    for (uint64_t p = 1; p <= N && res.ok; ++p) {
      check_access(p);
      for (uint64_t q = p; q <= N && res.ok; ++q) check_extract(p, q);
    }
  } else if (opt.full) {
    const std::string text = expand(against, against.start);
    const auto [whole, st] = extract_any(enc, 1, N);
    (void)st;
    ++res.extractions;
    if (whole != text) res.fail("whole-text extraction mismatch");
    for (uint64_t p = 1; p <= N && res.ok; ++p) {
      check_access(p);
      for (uint64_t len : {uint64_t(2), uint64_t(8), uint64_t(64)}) {
        if (p + len - 1 <= N) check_extract(p, p + len - 1);
        if (!res.ok) break;
      }
    }
  } else {
    for (uint64_t i = 0; i < opt.samples && res.ok; ++i) {
      const uint64_t p = rng() % N + 1;
      const uint64_t span = std::min<uint64_t>(N - p, rng() % 256);
      check_access(p);
      if (res.ok) check_extract(p, p + span);
    }
    if (res.ok) check_extract(1, N > 4096 ? 4096 : N);
  }
  return res;
}

}  // namespace slpx
