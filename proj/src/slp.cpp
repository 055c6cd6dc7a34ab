#include "slpx/slp.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "slpx/util.hpp"

namespace slpx {

namespace {

// Iterative DFS over the variable graph; reports back-edges (cycles) and
// fills a reverse topological order (children before parents).
struct DfsResult {
  std::vector<uint8_t> state;  // 0 unseen, 1 on stack, 2 done
  std::vector<uint64_t> order; // children-first
  uint64_t cycle_at = 0;
};

DfsResult dfs_variables(const Slp& g, uint64_t root) {
  DfsResult res;
  res.state.assign(g.n + 1, 0);
  std::vector<std::pair<uint64_t, int>> stack;  // (variable, next child 0/1/2)
  stack.push_back({root, 0});
  res.state[root] = 1;
  while (!stack.empty()) {
    auto& [v, k] = stack.back();
    if (k == 2) {
      res.state[v] = 2;
      res.order.push_back(v);
      stack.pop_back();
      continue;
    }
    const uint64_t c = (k == 0) ? g.rule(v).left : g.rule(v).right;
    ++k;
    if (!g.is_variable(c)) continue;
    if (res.state[c] == 1) {
      if (res.cycle_at == 0) res.cycle_at = c;
      continue;
    }
    if (res.state[c] == 0) {
      res.state[c] = 1;
      stack.push_back({c, 0});
    }
  }
  return res;
}

}  // namespace

std::vector<std::string> validate(const Slp& g) {
  std::vector<std::string> bad;
  if (g.n < 1) {
    bad.push_back("grammar has no variables");
    return bad;
  }
  if (g.sigma < 1) bad.push_back("alphabet is empty");
  if (g.alphabet.size() != g.sigma) bad.push_back("alphabet table size differs from sigma");
  if (g.rules.size() != g.n) {
    bad.push_back("rule count differs from n");
    return bad;
  }
  if (g.start < 1 || g.start > g.n) {
    bad.push_back("start symbol " + std::to_string(g.start) + " is not a variable");
    return bad;
  }
  for (uint64_t v = 1; v <= g.n; ++v) {
    for (uint64_t c : {g.rule(v).left, g.rule(v).right}) {
      if (c < 1 || c > g.symbols()) {
        bad.push_back("out-of-range symbol " + std::to_string(c) + " in rule of variable " +
                      std::to_string(v));
      }
    }
  }
  if (!bad.empty()) return bad;

  const DfsResult dfs = dfs_variables(g, g.start);
  if (dfs.cycle_at != 0) {
    bad.push_back("cycle at variable " + std::to_string(dfs.cycle_at));
    return bad;
  }
  for (uint64_t v = 1; v <= g.n; ++v) {
    if (dfs.state[v] != 2) bad.push_back("unreachable variable " + std::to_string(v));
  }
  if (!bad.empty()) return bad;

  // expansion lengths must fit 64 bits
  std::vector<uint64_t> len(g.n + 1, 0);
  for (uint64_t v : dfs.order) {
    const auto get = [&](uint64_t c) { return g.is_terminal(c) ? uint64_t(1) : len[c]; };
    uint64_t sum = 0;
    if (__builtin_add_overflow(get(g.rule(v).left), get(g.rule(v).right), &sum)) {
      bad.push_back("expansion length overflow at variable " + std::to_string(v));
      return bad;
    }
    len[v] = sum;
  }
  if (len[g.start] < 2) bad.push_back("derived text shorter than 2");
  return bad;
}

void require_valid(const Slp& g) {
  const auto bad = validate(g);
  if (bad.empty()) return;
  std::string msg = "invalid grammar:";
  for (const auto& b : bad) msg += " " + b + ";";
  throw Error(msg);
}

std::vector<uint64_t> topological_variables(const Slp& g) {
  DfsResult dfs = dfs_variables(g, g.start);
  if (dfs.cycle_at != 0) throw Error("cycle at variable " + std::to_string(dfs.cycle_at));
  return dfs.order;  // children-first
}

std::vector<uint64_t> expansion_lengths(const Slp& g) {
  std::vector<uint64_t> len(g.n + 1, 0);
  for (uint64_t v : topological_variables(g)) {
    const auto get = [&](uint64_t c) { return g.is_terminal(c) ? uint64_t(1) : len[c]; };
    uint64_t sum = 0;
    if (__builtin_add_overflow(get(g.rule(v).left), get(g.rule(v).right), &sum)) {
      throw Error("expansion length overflow at variable " + std::to_string(v));
    }
    len[v] = sum;
  }
  return len;
}

uint64_t expansion_length(const Slp& g, uint64_t sym) {
  if (g.is_terminal(sym)) return 1;
  return expansion_lengths(g)[sym];
}

uint64_t text_length(const Slp& g) { return expansion_lengths(g)[g.start]; }

std::string expand(const Slp& g, uint64_t sym) {
  std::string out;
  std::vector<uint64_t> stack{sym};
  while (!stack.empty()) {
    const uint64_t s = stack.back();
    stack.pop_back();
    if (g.is_terminal(s)) {
      out.push_back(static_cast<char>(g.terminal_byte(s)));
    } else {
      stack.push_back(g.rule(s).right);
      stack.push_back(g.rule(s).left);
    }
  }
  return out;
}

uint8_t naive_access(const Slp& g, const std::vector<uint64_t>& lens, uint64_t p,
                     uint64_t* visited) {
  if (p < 1 || p > lens[g.start]) throw Error("position out of range");
  uint64_t sym = g.start, pos = p, seen = 1;
  while (g.is_variable(sym)) {
    const Rule& r = g.rule(sym);
    const uint64_t ll = symbol_length(g, lens, r.left);
    if (pos <= ll) {
      sym = r.left;
    } else {
      pos -= ll;
      sym = r.right;
    }
    ++seen;
  }
  if (visited) *visited = seen;
  return g.terminal_byte(sym);
}

uint8_t naive_access(const Slp& g, uint64_t p) {
  const auto lens = expansion_lengths(g);
  return naive_access(g, lens, p);
}

std::string naive_extract(const Slp& g, const std::vector<uint64_t>& lens, uint64_t p,
                          uint64_t q) {
  if (p < 1 || q < p || q > lens[g.start]) throw Error("range out of bounds");
  std::string out;
  out.reserve(q - p + 1);
  // descend to p, then stream symbols left to right
  struct Frame { uint64_t sym; };
  std::vector<uint64_t> stack{g.start};
  uint64_t skip = p - 1;
  const uint64_t want = q - p + 1;
  while (!stack.empty() && out.size() < want) {
    const uint64_t s = stack.back();
    stack.pop_back();
    const uint64_t ls = symbol_length(g, lens, s);
    if (skip >= ls) {
      skip -= ls;
      continue;
    }
    if (g.is_terminal(s)) {
      out.push_back(static_cast<char>(g.terminal_byte(s)));
      continue;
    }
    stack.push_back(g.rule(s).right);
    stack.push_back(g.rule(s).left);
  }
  return out;
}

std::string naive_extract(const Slp& g, uint64_t p, uint64_t q) {
  const auto lens = expansion_lengths(g);
  return naive_extract(g, lens, p, q);
}

uint64_t height(const Slp& g) {
  std::vector<uint64_t> h(g.n + 1, 0);
  for (uint64_t v : topological_variables(g)) {
    const auto get = [&](uint64_t c) { return g.is_terminal(c) ? uint64_t(0) : h[c]; };
    h[v] = 1 + std::max(get(g.rule(v).left), get(g.rule(v).right));
  }
  return h[g.start];
}

Slp compress(std::string_view text) {
  if (text.size() < 2) throw Error("text shorter than 2");

  // terminal ranks by ascending byte value
  std::vector<uint8_t> alpha;
  {
    bool present[256] = {};
    for (unsigned char c : text) present[c] = true;
    for (int c = 0; c < 256; ++c) {
      if (present[c]) alpha.push_back(static_cast<uint8_t>(c));
    }
  }
  const uint64_t sigma = alpha.size();
  std::vector<uint32_t> rank_of(256, 0);
  for (uint64_t r = 0; r < sigma; ++r) rank_of[alpha[r]] = static_cast<uint32_t>(r + 1);

  // working ids: terminals [1..sigma], variables sigma+1.. in creation order
  std::vector<uint64_t> seq;
  seq.reserve(text.size());
  for (unsigned char c : text) seq.push_back(rank_of[c]);
  std::vector<Rule> created;  // creation order, working ids

  const auto key = [](uint64_t a, uint64_t b) { return (a << 32) | b; };
  for (;;) {
    std::unordered_map<uint64_t, uint64_t> freq;
    freq.reserve(seq.size());
    for (uint64_t i = 0; i + 1 < seq.size();) {
      ++freq[key(seq[i], seq[i + 1])];
      // runs of equal symbols: count non-overlapping occurrences
      if (i + 2 < seq.size() && seq[i] == seq[i + 1] && seq[i + 1] == seq[i + 2]) {
        i += 2;
      } else {
        i += 1;
      }
    }
    uint64_t best = 0, best_count = 1;
    for (const auto& [k, c] : freq) {
      if (c > best_count || (c == best_count && best != 0 && k < best)) {
        best = k;
        best_count = c;
      }
    }
    if (best == 0) break;
    const uint64_t a = best >> 32, b = best & 0xffffffffu;
    created.push_back(Rule{a, b});
    const uint64_t nv = sigma + created.size();
    std::vector<uint64_t> next;
    next.reserve(seq.size());
    for (uint64_t i = 0; i < seq.size();) {
      if (i + 1 < seq.size() && seq[i] == a && seq[i + 1] == b) {
        next.push_back(nv);
        i += 2;
      } else {
        next.push_back(seq[i]);
        i += 1;
      }
    }
    seq.swap(next);
  }

  // balanced binary merge of the residual sequence
  struct Builder {
    std::vector<Rule>& created;
    uint64_t sigma;
    const std::vector<uint64_t>& seq;
    uint64_t merge(uint64_t lo, uint64_t hi) {  // [lo..hi] inclusive
      if (lo == hi) return seq[lo];
      const uint64_t mid = lo + (hi - lo) / 2;
      const uint64_t l = merge(lo, mid);
      const uint64_t r = merge(mid + 1, hi);
      created.push_back(Rule{l, r});
      return sigma + created.size();
    }
  };
  uint64_t root;
  if (seq.size() == 1) {
    root = seq[0];
    if (root <= sigma) throw Error("internal: residual terminal");  // |text| >= 2 prevents this
  } else {
    Builder b{created, sigma, seq};
    root = b.merge(0, seq.size() - 1);
  }

  // map working ids to the final convention: variables [1..n] with the
  // last-created variable first, terminals [n+1..n+sigma]
  const uint64_t n = created.size();
  const auto remap = [&](uint64_t w) -> uint64_t {
    return w <= sigma ? n + w : n - (w - sigma) + 1;
  };
  Slp g;
  g.n = n;
  g.sigma = sigma;
  g.alphabet = alpha;
  g.start = remap(root);
  g.rules.resize(n);
  for (uint64_t k = 0; k < n; ++k) {
    g.rules[remap(sigma + k + 1) - 1] = Rule{remap(created[k].left), remap(created[k].right)};
  }
  require_valid(g);
  return g;
}

namespace {

uint64_t parse_u64(std::string_view tok, const char* what) {
  uint64_t v = 0;
  const auto* b = tok.data();
  const auto* e = tok.data() + tok.size();
  const auto res = std::from_chars(b, e, v);
  if (res.ec != std::errc() || res.ptr != e) {
    throw ParseError(std::string("bad integer for ") + what + ": '" + std::string(tok) + "'");
  }
  return v;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

}  // namespace

Slp parse_slp_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input");
  auto toks = tokenize(line);
  if (toks.size() != 4 || toks[0] != "SLP") throw ParseError("expected 'SLP <n> <sigma> <start>'");
  Slp g;
  g.n = parse_u64(toks[1], "n");
  g.sigma = parse_u64(toks[2], "sigma");
  g.start = parse_u64(toks[3], "start");

  if (!std::getline(in, line)) throw ParseError("missing ALPHABET line");
  toks = tokenize(line);
  if (toks.empty() || toks[0] != "ALPHABET" || toks.size() != g.sigma + 1) {
    throw ParseError("expected 'ALPHABET' with exactly sigma byte values");
  }
  for (uint64_t r = 1; r <= g.sigma; ++r) {
    const uint64_t b = parse_u64(toks[r], "alphabet byte");
    if (b > 255) throw ParseError("alphabet byte out of range: " + toks[r]);
    g.alphabet.push_back(static_cast<uint8_t>(b));
  }

  for (uint64_t v = 1; v <= g.n; ++v) {
    if (!std::getline(in, line)) throw ParseError("missing rule line for variable " + std::to_string(v));
    toks = tokenize(line);
    if (toks.size() != 2) throw ParseError("expected '<left> <right>' for variable " + std::to_string(v));
    g.rules.push_back(Rule{parse_u64(toks[0], "left"), parse_u64(toks[1], "right")});
  }
  while (std::getline(in, line)) {
    if (!tokenize(line).empty()) throw ParseError("trailing garbage after rules");
  }
  require_valid(g);
  return g;
}

Slp parse_slp_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_slp_text(in);
}

std::string format_slp_text(const Slp& g) {
  std::ostringstream out;
  out << "SLP " << g.n << ' ' << g.sigma << ' ' << g.start << '\n';
  out << "ALPHABET";
  for (uint8_t b : g.alphabet) out << ' ' << static_cast<unsigned>(b);
  out << '\n';
  for (const Rule& r : g.rules) out << r.left << ' ' << r.right << '\n';
  return out.str();
}

}  // namespace slpx
