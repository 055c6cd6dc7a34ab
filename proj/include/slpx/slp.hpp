#ifndef SLPX_SLP_HPP
#define SLPX_SLP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace slpx {

struct Rule {
  uint64_t left = 0;
  uint64_t right = 0;
  bool operator==(const Rule&) const = default;
};

// Straight-line program in normal form: every rule derives exactly two
// symbols. Variables are [1..n], terminals [n+1..n+sigma]; terminal
// n+r maps to the byte alphabet[r-1]. Immutable after validation; all
// query helpers are pure reads.
struct Slp {
  uint64_t n = 0;
  uint64_t sigma = 0;
  uint64_t start = 0;
  std::vector<Rule> rules;        // rules[v-1] is the rule of variable v
  std::vector<uint8_t> alphabet;  // terminal rank -> byte value

  uint64_t symbols() const { return n + sigma; }
  bool is_variable(uint64_t s) const { return s >= 1 && s <= n; }
  bool is_terminal(uint64_t s) const { return s > n && s <= n + sigma; }
  uint8_t terminal_byte(uint64_t s) const { return alphabet[s - n - 1]; }
  const Rule& rule(uint64_t v) const { return rules[v - 1]; }
};

// Empty vector means the grammar is valid; otherwise one message per
// violation naming the rule or symbol at fault.
std::vector<std::string> validate(const Slp& g);
void require_valid(const Slp& g);  // throws Error listing the violations

// Topological order of the variables (children after parents never
// holds in general, so this is computed, not assumed from ids).
// Returned order has every variable after both of its variable children.
std::vector<uint64_t> topological_variables(const Slp& g);

// |<x>| for every variable, one pass over a topological order; throws on
// 64-bit overflow. Index by variable id; slot 0 unused.
std::vector<uint64_t> expansion_lengths(const Slp& g);

uint64_t expansion_length(const Slp& g, uint64_t sym);
inline uint64_t symbol_length(const Slp& g, const std::vector<uint64_t>& lens, uint64_t sym) {
  return g.is_terminal(sym) ? 1 : lens[sym];
}

// Derived text length N = |<start>|.
uint64_t text_length(const Slp& g);

// Iterative expansion (explicit stack; no recursion-depth limit).
std::string expand(const Slp& g, uint64_t sym);

// T[p] by root-to-leaf descent; visits <= height+1 nodes.
uint8_t naive_access(const Slp& g, const std::vector<uint64_t>& lens, uint64_t p,
                     uint64_t* visited = nullptr);
uint8_t naive_access(const Slp& g, uint64_t p);

// T[p..q], 1-based inclusive.
std::string naive_extract(const Slp& g, const std::vector<uint64_t>& lens, uint64_t p, uint64_t q);
std::string naive_extract(const Slp& g, uint64_t p, uint64_t q);

// Edges on the longest root-to-leaf path of the derivation tree.
uint64_t height(const Slp& g);

// Deterministic text -> SLP builder: iterated most-frequent-pair
// replacement (ties to the smaller pair), then balanced binary merging
// of the residual sequence. |text| >= 2.
Slp compress(std::string_view text);

// Line-oriented text format:
//   SLP <n> <sigma> <start>
//   ALPHABET <b1> ... <bsigma>
//   <left> <right>            (one line per variable, in id order)
// Parsing is strict; trailing garbage is an error.
Slp parse_slp_text(std::istream& in);
Slp parse_slp_file(const std::string& path);
std::string format_slp_text(const Slp& g);

}  // namespace slpx

#endif  // SLPX_SLP_HPP
