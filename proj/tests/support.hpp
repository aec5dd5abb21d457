#pragma once
// Helpers shared by the unit tests: fixtures, random inputs and
// brute-force oracles that do not go through the library's search code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "krcl/graph.hpp"
#include "krcl/hypergraph.hpp"
#include "krcl/solver.hpp"

namespace krcl::test {

inline std::string data_path(const std::string& name) { return std::string(KRCL_TEST_DATA) + "/" + name; }

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  Graph g(n);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) g.add_edge(u, v);
    }
  }
  return g;
}

inline std::vector<int> random_perm(int n, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

// Drops hyperedges named by failed criticality certificates until the rest
// is star-critical. Used to turn dense hosts into flower-rich inputs.
inline Hypergraph critical_core(Hypergraph h) {
  for (;;) {
    const StarCriticalCertificate c = is_star_critical(h);
    if (c.critical) return h;
    std::vector<Hyperedge> keep;
    for (const Hyperedge& e : h.hyperedges()) {
      const bool drop = (c.uncovered_hypervertex && e.contains(*c.uncovered_hypervertex)) ||
                        (c.unshielded && e == c.unshielded->first);
      if (!drop) keep.push_back(e);
    }
    h = Hypergraph(h.host(), keep);
  }
}

// Exhaustive 2-colouring check; hypervertices are bit positions.
inline bool brute_force_ramsey(const Hypergraph& h) {
  const std::vector<int>& ids = h.hypervertices();
  std::vector<std::uint32_t> masks;
  std::vector<int> kinds;
  for (const Hyperedge& e : h.hyperedges()) {
    std::uint32_t m = 0;
    for (int id : e.edges) {
      m |= std::uint32_t{1} << (std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    }
    masks.push_back(m);
    kinds.push_back(static_cast<int>(e.kind));
  }
  const std::uint32_t total = std::uint32_t{1} << ids.size();
  for (std::uint32_t ones = 0; ones < total; ++ones) {  // bit set = colour 1
    bool bad = false;
    for (std::size_t k = 0; k < masks.size() && !bad; ++k) {
      bad = kinds[k] == 1 ? (ones & masks[k]) == masks[k] : (ones & masks[k]) == 0;
    }
    if (!bad) return false;
  }
  return true;
}

inline Graph rook_graph() { return load_graph_file(data_path("rook4x4.txt")); }

}  // namespace krcl::test
