#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "krcl/canonical.hpp"
#include "krcl/densities.hpp"
#include "krcl/graph.hpp"

namespace krcl {

/// Type 1 hyperedges are clique copies, type 2 are cycle copies. The numeric
/// value is also the colour a hyperedge must not be monochromatic in.
enum class HyperedgeKind : std::uint8_t { Clique = 1, Cycle = 2 };

const char* to_string(HyperedgeKind kind) noexcept;

/// A clique or cycle copy, stored as the sorted ids of its host edges.
/// Identity and ordering are (kind, edge ids).
struct Hyperedge {
  HyperedgeKind kind = HyperedgeKind::Clique;
  std::vector<int> edges;

  static Hyperedge from_edges(HyperedgeKind kind, std::span<const Edge> edges);

  VertexSet vertices() const;
  bool contains(int edge_id) const;
  std::vector<Edge> edge_list() const;
  Hyperedge relabel(std::span<const int> perm) const;

  friend auto operator<=>(const Hyperedge&, const Hyperedge&) = default;
};

/// Number of hypervertices two hyperedges share.
int shared_count(const Hyperedge& a, const Hyperedge& b);
/// True iff a ∩ b = {edge_id}.
bool meets_exactly_in(const Hyperedge& a, const Hyperedge& b, int edge_id);
/// True iff every edge of `e` is in the sorted id set `ids`.
bool edges_within(const Hyperedge& e, std::span<const int> sorted_ids);

/// Hypergraph on the edges of a host graph. Hyperedges are kept sorted and
/// unique; the hypervertex set is the union of the hyperedges, so the
/// underlying graph always has exactly as many edges as there are
/// hypervertices.
class Hypergraph {
 public:
  Hypergraph() = default;
  explicit Hypergraph(Graph host) : host_(std::move(host)) {}
  Hypergraph(Graph host, std::vector<Hyperedge> hyperedges);

  const Graph& host() const noexcept { return host_; }
  const std::vector<Hyperedge>& hyperedges() const noexcept { return edges_; }
  const std::vector<int>& hypervertices() const noexcept { return vertices_; }

  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }
  int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
  int clique_count() const;
  int cycle_count() const;

  bool contains(const Hyperedge& e) const;
  bool contains_all(const Hypergraph& other) const;

  Hypergraph without_hyperedge(std::size_t index) const;
  Hypergraph without_hypervertex(int edge_id) const;
  Hypergraph with(std::span<const Hyperedge> extra) const;
  Hypergraph relabel(std::span<const int> perm) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  void normalise();

  Graph host_;
  std::vector<Hyperedge> edges_;
  std::vector<int> vertices_;
};

/// r-cliques of g, one per vertex set, in lexicographic vertex-set order.
std::vector<Hyperedge> enum_cliques(const Graph& g, int r);
/// ell-cycles of g as edge sets, each emitted once: the walk starts at the
/// cycle's smallest vertex and its second vertex is smaller than its last.
std::vector<Hyperedge> enum_cycles(const Graph& g, int ell);

Hypergraph build_hypergraph(const Graph& g, const PairParams& pp);

/// Subgraph of the host whose edges are the hypervertices.
Subgraph underlying_graph(const Hypergraph& h);

/// Canonical vertex labelling of the host-level structure of `h` (underlying
/// graph plus both hyperedge families); isomorphic hypergraphs receive equal
/// codes.
CanonicalLabelling hypergraph_canonical_labelling(const Hypergraph& h);

/// Variant whose isomorphisms must also preserve the hypervertex set
/// `marked`; `tag` is folded into the code so that different uses of the
/// mark never share codes.
CanonicalLabelling hypergraph_canonical_labelling(const Hypergraph& h, std::span<const int> marked, std::uint64_t tag);

}  // namespace krcl
