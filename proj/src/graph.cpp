#include "krcl/graph.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace krcl {

Edge make_edge(int a, int b) {
  if (a == b) throw ArgumentError("loop edge {" + std::to_string(a) + "," + std::to_string(b) + "}");
  if (a < 0 || b < 0 || a >= kMaxVertices || b >= kMaxVertices) {
    throw ArgumentError("edge endpoint out of range");
  }
  return a < b ? Edge{a, b} : Edge{b, a};
}

Edge edge_from_id(int id) {
  if (id < 0 || id >= kMaxEdgeIds) throw ArgumentError("edge id out of range: " + std::to_string(id));
  // largest v with v(v-1)/2 <= id
  int v = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * id)) / 2.0);
  while (v * (v - 1) / 2 > id) --v;
  while ((v + 1) * v / 2 <= id) ++v;
  return Edge{id - v * (v - 1) / 2, v};
}

Graph::Graph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) {
    throw ArgumentError("graph order " + std::to_string(n) + " outside [0, " + std::to_string(kMaxVertices) + "]");
  }
  rows_.assign(static_cast<std::size_t>(n), 0);
}

Graph Graph::complete(int n) {
  Graph g(n);
  for (int v = 0; v < n; ++v) g.rows_[v] = first_vertices(n) & ~vertex_bit(v);
  return g;
}

Graph Graph::cycle(int n) {
  if (n < 3) throw ArgumentError("cycle needs at least 3 vertices");
  Graph g(n);
  for (int v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

Graph Graph::path(int n) {
  Graph g(n);
  for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
  return g;
}

Graph Graph::from_edges(int n, std::span<const Edge> edges) {
  Graph g(n);
  for (const Edge& e : edges) g.add_edge(e);
  return g;
}

int Graph::size() const noexcept {
  int twice = 0;
  for (std::uint64_t row : rows_) twice += std::popcount(row);
  return twice / 2;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) {
    throw ArgumentError("vertex " + std::to_string(v) + " out of range for graph of order " + std::to_string(n_));
  }
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return (rows_[u] >> v) & 1U;
}

void Graph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw ArgumentError("loop at vertex " + std::to_string(u));
  rows_[u] |= vertex_bit(v);
  rows_[v] |= vertex_bit(u);
}

void Graph::remove_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  rows_[u] &= ~vertex_bit(v);
  rows_[v] &= ~vertex_bit(u);
}

VertexSet Graph::neighbours(int v) const {
  check_vertex(v);
  return rows_[v];
}

int Graph::degree(int v) const { return popcount(neighbours(v)); }

int Graph::restricted_degree(int v, VertexSet s) const { return popcount(neighbours(v) & s); }

int Graph::min_degree() const {
  int best = n_ == 0 ? 0 : n_;
  for (std::uint64_t row : rows_) best = std::min(best, std::popcount(row));
  return best;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    std::uint64_t higher = rows_[u] & ~first_vertices(u + 1);
    while (higher) {
      const int v = std::countr_zero(higher);
      higher &= higher - 1;
      out.push_back(Edge{u, v});
    }
  }
  return out;
}

Graph Graph::relabel(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw ArgumentError("permutation size mismatch");
  VertexSet seen = 0;
  for (int p : perm) {
    if (p < 0 || p >= n_ || (seen & vertex_bit(p))) throw ArgumentError("not a permutation");
    seen |= vertex_bit(p);
  }
  Graph g(n_);
  for (const Edge& e : edges()) g.add_edge(perm[e.u], perm[e.v]);
  return g;
}

Graph Graph::induced(VertexSet s) const {
  Graph g(n_);
  for (int v = 0; v < n_; ++v) {
    if (s & vertex_bit(v)) g.rows_[v] = rows_[v] & s;
  }
  return g;
}

Subgraph Subgraph::whole(const Graph& g) {
  Subgraph s(g.order());
  s.vertices_ = first_vertices(g.order());
  s.edges_ = g;
  return s;
}

Subgraph Subgraph::spanned_by(int host_order, std::span<const Edge> edges) {
  Subgraph s(host_order);
  for (const Edge& e : edges) s.add_edge(e);
  return s;
}

void Subgraph::add_vertex(int v) {
  if (v < 0 || v >= host_order()) throw ArgumentError("vertex outside host labelling");
  vertices_ |= vertex_bit(v);
}

void Subgraph::add_edge(Edge e) {
  edges_.add_edge(e);
  vertices_ |= vertex_bit(e.u) | vertex_bit(e.v);
}

Graph Subgraph::compact() const {
  std::vector<int> index(static_cast<std::size_t>(host_order()), -1);
  int k = 0;
  for (int v = 0; v < host_order(); ++v) {
    if (vertices_ & vertex_bit(v)) index[v] = k++;
  }
  Graph g(k);
  for (const Edge& e : edges_.edges()) g.add_edge(index[e.u], index[e.v]);
  return g;
}

Subgraph Subgraph::relabel(std::span<const int> perm) const {
  Subgraph s(host_order());
  s.edges_ = edges_.relabel(perm);
  for (int v = 0; v < host_order(); ++v) {
    if (vertices_ & vertex_bit(v)) s.vertices_ |= vertex_bit(perm[v]);
  }
  return s;
}

namespace {

void check_same_host(const Subgraph& a, const Subgraph& b) {
  if (a.host_order() != b.host_order()) throw ArgumentError("subgraphs live on different hosts");
}

}  // namespace

Subgraph subgraph_intersection(const Subgraph& a, const Subgraph& b) {
  check_same_host(a, b);
  Subgraph out(a.host_order());
  const VertexSet common = a.vertices() & b.vertices();
  for (int v = 0; v < a.host_order(); ++v) {
    if (common & vertex_bit(v)) out.add_vertex(v);
  }
  for (const Edge& e : a.edges()) {
    if (b.has_edge(e)) out.add_edge(e);
  }
  return out;
}

Subgraph subgraph_union(const Subgraph& a, const Subgraph& b) {
  check_same_host(a, b);
  Subgraph out = a;
  for (int v = 0; v < b.host_order(); ++v) {
    if (b.vertices() & vertex_bit(v)) out.add_vertex(v);
  }
  for (const Edge& e : b.edges()) out.add_edge(e);
  return out;
}

VertexPartitionAB partition_ab(const Subgraph& g, int r) {
  VertexPartitionAB p;
  for (int v = 0; v < g.host_order(); ++v) {
    if (!g.has_vertex(v)) continue;
    const int d = g.degree(v);
    if (d < r) {
      throw PreconditionError("vertex " + std::to_string(v) + " has degree " + std::to_string(d) + " < r = " +
                              std::to_string(r));
    }
    (d == r ? p.a : p.b) |= vertex_bit(v);
  }
  return p;
}

VertexPartitionAB partition_ab(const Graph& g, int r) { return partition_ab(Subgraph::whole(g), r); }

namespace {

// Parses "a b" exactly: decimal digits, one space, nothing else.
bool parse_pair(std::string_view line, long long& a, long long& b) {
  const auto space = line.find(' ');
  if (space == std::string_view::npos || space == 0 || space + 1 >= line.size()) return false;
  auto digits = [](std::string_view s, long long& out) {
    if (s.empty() || s.size() > 18) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
  };
  return digits(line.substr(0, space), a) && digits(line.substr(space + 1), b);
}

}  // namespace

Graph parse_graph_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError("empty graph text");
  long long n = 0;
  long long m = 0;
  if (!parse_pair(lines[0], n, m)) throw ParseError("line 1: expected \"n m\"");
  if (n > kMaxVertices) throw ParseError("line 1: n = " + std::to_string(n) + " exceeds vertex cap");
  if (static_cast<long long>(lines.size()) - 1 != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges but " + std::to_string(lines.size() - 1) +
                     " edge lines follow");
  }
  Graph g(static_cast<int>(n));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    long long u = 0;
    long long v = 0;
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    if (!parse_pair(lines[i], u, v)) throw ParseError(where + "expected \"u v\"");
    if (!(u < v && v < n)) throw ParseError(where + "need 0 <= u < v < n");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v))) throw ParseError(where + "duplicate edge");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

std::string format_graph_text(const Graph& g) {
  std::ostringstream os;
  const auto edges = g.edges();
  os << g.order() << ' ' << edges.size() << '\n';
  for (const Edge& e : edges) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph_text(buf.str());
}

void save_graph_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << format_graph_text(g);
}

}  // namespace krcl
