#include "slpx/scd.hpp"

#include <algorithm>
#include <numeric>

#include "slpx/util.hpp"

namespace slpx {

PathCounts path_counts(const Slp& g) {
  PathCounts c;
  c.in_paths.assign(g.symbols() + 1, 0);
  c.out_paths.assign(g.symbols() + 1, 0);

  const auto topo = topological_variables(g);  // children before parents

  // out_paths: one backward pass; terminals contribute 1
  for (uint64_t t = g.n + 1; t <= g.symbols(); ++t) c.out_paths[t] = 1;
  for (uint64_t v : topo) {
    uint64_t sum = 0;
    if (__builtin_add_overflow(c.out_paths[g.rule(v).left], c.out_paths[g.rule(v).right], &sum)) {
      throw Error("path count overflow at variable " + std::to_string(v));
    }
    c.out_paths[v] = sum;
  }

  // in_paths: one forward pass (parents before children)
  c.in_paths[g.start] = 1;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    const uint64_t v = *it;
    for (uint64_t ch : {g.rule(v).left, g.rule(v).right}) {
      uint64_t sum = 0;
      if (__builtin_add_overflow(c.in_paths[ch], c.in_paths[v], &sum)) {
        throw Error("path count overflow at symbol " + std::to_string(ch));
      }
      c.in_paths[ch] = sum;
    }
  }
  return c;
}

bool is_sc_edge(const PathCounts& c, uint64_t u, uint64_t v) {
  return floor_lg(c.in_paths[u]) == floor_lg(c.in_paths[v]) &&
         floor_lg(c.out_paths[u]) == floor_lg(c.out_paths[v]);
}

ScDecomposition sc_decompose(const Slp& g, const PathCounts& counts) {
  // sc_next[u] = SC-successor of variable u, 0 if none
  std::vector<uint64_t> sc_next(g.n + 1, 0);
  std::vector<uint8_t> has_sc_in(g.n + 1, 0);
  for (uint64_t u = 1; u <= g.n; ++u) {
    const Rule& r = g.rule(u);
    uint64_t target = 0;
    for (uint64_t ch : {r.left, r.right}) {
      if (!g.is_variable(ch) || !is_sc_edge(counts, u, ch)) continue;
      if (target != 0) throw Error("two outgoing SC-edges at variable " + std::to_string(u));
      target = ch;
    }
    if (target != 0) {
      if (has_sc_in[target]) throw Error("two incoming SC-edges at variable " + std::to_string(target));
      has_sc_in[target] = 1;
      sc_next[u] = target;
    }
  }

  ScDecomposition dec;
  dec.node_path.assign(g.n + 1, {0, 0});
  for (uint64_t top = 1; top <= g.n; ++top) {
    if (has_sc_in[top]) continue;  // not a topmost node
    std::vector<uint64_t> path;
    for (uint64_t u = top; u != 0; u = sc_next[u]) path.push_back(u);
    dec.paths.push_back(std::move(path));
  }
  std::sort(dec.paths.begin(), dec.paths.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  dec.n_prime = dec.paths.size();
  for (uint32_t k = 0; k < dec.paths.size(); ++k) {
    for (uint32_t j = 0; j < dec.paths[k].size(); ++j) {
      dec.node_path[dec.paths[k][j]] = {k, j + 1};
    }
  }
  dec.renumber.resize(g.n + 1);
  std::iota(dec.renumber.begin(), dec.renumber.end(), 0);
  return dec;
}

std::pair<Slp, ScDecomposition> renumber(const Slp& g, const ScDecomposition& dec,
                                         const std::vector<uint32_t>& order) {
  if (order.size() != dec.paths.size()) throw Error("order is not a permutation of the paths");
  std::vector<uint64_t> new_of(g.n + 1, 0);
  uint64_t next = 1;
  for (uint32_t k : order) {
    for (uint64_t u : dec.paths[k]) new_of[u] = next++;
  }
  if (next != g.n + 1) throw Error("order is not a permutation of the paths");

  const auto map_sym = [&](uint64_t s) { return g.is_variable(s) ? new_of[s] : s; };
  Slp out;
  out.n = g.n;
  out.sigma = g.sigma;
  out.alphabet = g.alphabet;
  out.start = new_of[g.start];
  out.rules.resize(g.n);
  for (uint64_t v = 1; v <= g.n; ++v) {
    out.rules[new_of[v] - 1] = Rule{map_sym(g.rule(v).left), map_sym(g.rule(v).right)};
  }

  ScDecomposition dec2;
  dec2.n_prime = dec.n_prime;
  dec2.node_path.assign(g.n + 1, {0, 0});
  for (uint32_t k = 0; k < order.size(); ++k) {
    std::vector<uint64_t> path;
    for (uint64_t u : dec.paths[order[k]]) path.push_back(new_of[u]);
    for (uint32_t j = 0; j < path.size(); ++j) dec2.node_path[path[j]] = {k, j + 1};
    dec2.paths.push_back(std::move(path));
  }
  dec2.renumber = new_of;
  return {std::move(out), std::move(dec2)};
}

}  // namespace slpx
