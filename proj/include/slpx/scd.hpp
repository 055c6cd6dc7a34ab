#ifndef SLPX_SCD_HPP
#define SLPX_SCD_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "slpx/slp.hpp"

namespace slpx {

// Per-node path counts on the rule DAG: in_paths[v] is the number of
// root-to-v paths, out_paths[v] the number of v-to-leaf paths (which
// equals the expansion length). A rule X -> YY contributes two parallel
// edges. Indexed by symbol id; slot 0 unused.
struct PathCounts {
  std::vector<uint64_t> in_paths;
  std::vector<uint64_t> out_paths;
};

PathCounts path_counts(const Slp& g);

// Edge (u, v) is an SC-edge iff both endpoints share the pair
// (floor lg in_paths, floor lg out_paths).
bool is_sc_edge(const PathCounts& c, uint64_t u, uint64_t v);

// Disjoint SC-paths over the variables. Terminals always sit on
// singleton paths and are excluded from both `paths` and n_prime.
struct ScDecomposition {
  std::vector<std::vector<uint64_t>> paths;  // variable ids, topmost first
  // node_path[v] = (path index 0-based, position 1..m); slot 0 unused
  std::vector<std::pair<uint32_t, uint32_t>> node_path;
  uint64_t n_prime = 0;
  std::vector<uint64_t> renumber;  // old variable id -> new id (identity until renumbered)
};

// Chains SC-edges into maximal paths; initial path order is by the
// topmost node's id.
ScDecomposition sc_decompose(const Slp& g, const PathCounts& counts);

// Relabels variables so that the k-th path of `order` occupies the next
// consecutive ids, topmost node first; expansions are unchanged.
// `order[k]` is an index into dec.paths.
std::pair<Slp, ScDecomposition> renumber(const Slp& g, const ScDecomposition& dec,
                                         const std::vector<uint32_t>& order);

}  // namespace slpx

#endif  // SLPX_SCD_HPP
