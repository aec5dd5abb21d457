#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "krcl/error.hpp"

namespace krcl {

inline constexpr int kMaxVertices = 64;

/// Vertex subset of a host graph; bit v set iff vertex v is a member.
using VertexSet = std::uint64_t;

inline constexpr VertexSet vertex_bit(int v) noexcept { return VertexSet{1} << v; }
inline int popcount(VertexSet s) noexcept { return std::popcount(s); }
inline VertexSet first_vertices(int n) noexcept { return n >= 64 ? ~VertexSet{0} : vertex_bit(n) - 1; }

/// Undirected edge with u < v.
struct Edge {
  int u = 0;
  int v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

Edge make_edge(int a, int b);

/// Stable id of the vertex pair {u, v}, independent of any host graph:
/// v*(v-1)/2 + u. Ids are dense over 0 <= u < v < kMaxVertices.
inline constexpr int edge_id(Edge e) noexcept { return e.v * (e.v - 1) / 2 + e.u; }
Edge edge_from_id(int id);

inline constexpr int kMaxEdgeIds = kMaxVertices * (kMaxVertices - 1) / 2;

/// Simple undirected graph on vertices 0..n-1, one 64-bit adjacency row per
/// vertex.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph complete(int n);
  static Graph cycle(int n);
  static Graph path(int n);
  static Graph from_edges(int n, std::span<const Edge> edges);

  int order() const noexcept { return n_; }
  int size() const noexcept;

  bool has_edge(int u, int v) const;
  bool has_edge(Edge e) const { return has_edge(e.u, e.v); }
  void add_edge(int u, int v);
  void add_edge(Edge e) { add_edge(e.u, e.v); }
  void remove_edge(int u, int v);

  VertexSet neighbours(int v) const;
  int degree(int v) const;
  /// |N(v) ∩ S|
  int restricted_degree(int v, VertexSet s) const;
  int min_degree() const;

  /// Edges in lexicographic (u, v) order.
  std::vector<Edge> edges() const;

  /// New graph in which vertex v becomes perm[v]; perm must be a permutation
  /// of 0..n-1.
  Graph relabel(std::span<const int> perm) const;
  Graph induced(VertexSet s) const;  // keeps labels, drops edges leaving s

  std::span<const std::uint64_t> rows() const noexcept { return rows_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Subgraph of a host labelling: a vertex set plus an edge set whose
/// endpoints lie in it. Isolated vertices are allowed.
class Subgraph {
 public:
  Subgraph() = default;
  explicit Subgraph(int host_order) : edges_(host_order) {}

  static Subgraph whole(const Graph& g);
  /// Vertex set = endpoints of the given edges.
  static Subgraph spanned_by(int host_order, std::span<const Edge> edges);

  int host_order() const noexcept { return edges_.order(); }
  VertexSet vertices() const noexcept { return vertices_; }
  const Graph& edge_graph() const noexcept { return edges_; }

  int vertex_count() const noexcept { return popcount(vertices_); }
  int edge_count() const noexcept { return edges_.size(); }

  bool has_vertex(int v) const noexcept { return v >= 0 && v < host_order() && (vertices_ & vertex_bit(v)); }
  bool has_edge(Edge e) const { return edges_.has_edge(e); }

  void add_vertex(int v);
  void add_edge(Edge e);

  std::vector<Edge> edges() const { return edges_.edges(); }
  int degree(int v) const { return edges_.degree(v); }

  /// Relabels the vertex set to 0..k-1 preserving label order.
  Graph compact() const;
  Subgraph relabel(std::span<const int> perm) const;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;

 private:
  VertexSet vertices_ = 0;
  Graph edges_;
};

Subgraph subgraph_intersection(const Subgraph& a, const Subgraph& b);
Subgraph subgraph_union(const Subgraph& a, const Subgraph& b);

struct VertexPartitionAB {
  VertexSet a = 0;  // d(v) = r
  VertexSet b = 0;  // d(v) > r
};

/// Splits the vertices of `g` by degree against r; throws PreconditionError
/// naming the first vertex with d(v) < r.
VertexPartitionAB partition_ab(const Subgraph& g, int r);
VertexPartitionAB partition_ab(const Graph& g, int r);

/// Plain-text graph format: "n m" then m lines "u v" with u < v, LF endings.
Graph parse_graph_text(std::string_view text);
std::string format_graph_text(const Graph& g);
Graph load_graph_file(const std::string& path);
void save_graph_file(const Graph& g, const std::string& path);

}  // namespace krcl
