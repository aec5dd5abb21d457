#include "krcl/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace krcl {

const char* to_string(HyperedgeKind kind) noexcept {
  return kind == HyperedgeKind::Clique ? "clique" : "cycle";
}

Hyperedge Hyperedge::from_edges(HyperedgeKind kind, std::span<const Edge> edges) {
  Hyperedge h;
  h.kind = kind;
  h.edges.reserve(edges.size());
  for (const Edge& e : edges) h.edges.push_back(edge_id(e));
  std::sort(h.edges.begin(), h.edges.end());
  h.edges.erase(std::unique(h.edges.begin(), h.edges.end()), h.edges.end());
  return h;
}

VertexSet Hyperedge::vertices() const {
  VertexSet s = 0;
  for (int id : edges) {
    const Edge e = edge_from_id(id);
    s |= vertex_bit(e.u) | vertex_bit(e.v);
  }
  return s;
}

bool Hyperedge::contains(int edge_id) const { return std::binary_search(edges.begin(), edges.end(), edge_id); }

std::vector<Edge> Hyperedge::edge_list() const {
  std::vector<Edge> out;
  out.reserve(edges.size());
  for (int id : edges) out.push_back(edge_from_id(id));
  return out;
}

Hyperedge Hyperedge::relabel(std::span<const int> perm) const {
  std::vector<Edge> mapped;
  mapped.reserve(edges.size());
  for (int id : edges) {
    const Edge e = edge_from_id(id);
    mapped.push_back(make_edge(perm[e.u], perm[e.v]));
  }
  return from_edges(kind, mapped);
}

int shared_count(const Hyperedge& a, const Hyperedge& b) {
  int count = 0;
  auto i = a.edges.begin();
  auto j = b.edges.begin();
  while (i != a.edges.end() && j != b.edges.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

bool meets_exactly_in(const Hyperedge& a, const Hyperedge& b, int edge_id) {
  return a.contains(edge_id) && b.contains(edge_id) && shared_count(a, b) == 1;
}

bool edges_within(const Hyperedge& e, std::span<const int> sorted_ids) {
  return std::all_of(e.edges.begin(), e.edges.end(),
                     [&](int id) { return std::binary_search(sorted_ids.begin(), sorted_ids.end(), id); });
}

namespace {

void validate_shape(const Hyperedge& h, const Graph& host) {
  if (h.edges.empty()) throw ArgumentError("hyperedge without edges");
  Graph g(host.order());
  for (int id : h.edges) {
    const Edge e = edge_from_id(id);
    if (e.v >= host.order() || !host.has_edge(e)) {
      throw ArgumentError("hyperedge uses edge {" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          "} absent from the host graph");
    }
    g.add_edge(e);
  }
  const VertexSet vs = h.vertices();
  const int k = popcount(vs);
  const int m = static_cast<int>(h.edges.size());
  if (h.kind == HyperedgeKind::Clique) {
    if (m != k * (k - 1) / 2) throw ArgumentError("clique hyperedge is not a complete graph");
    return;
  }
  if (m != k || k < 3) throw ArgumentError("cycle hyperedge is not a single cycle");
  for (int v = 0; v < host.order(); ++v) {
    if ((vs & vertex_bit(v)) && g.degree(v) != 2) throw ArgumentError("cycle hyperedge is not 2-regular");
  }
  // connectivity
  const int start = std::countr_zero(vs);
  VertexSet seen = vertex_bit(start);
  VertexSet frontier = seen;
  while (frontier) {
    VertexSet next = 0;
    VertexSet f = frontier;
    while (f) {
      const int v = std::countr_zero(f);
      f &= f - 1;
      next |= g.neighbours(v);
    }
    frontier = next & ~seen;
    seen |= next;
  }
  if (seen != vs) throw ArgumentError("cycle hyperedge is disconnected");
}

}  // namespace

Hypergraph::Hypergraph(Graph host, std::vector<Hyperedge> hyperedges)
    : host_(std::move(host)), edges_(std::move(hyperedges)) {
  for (const Hyperedge& h : edges_) validate_shape(h, host_);
  normalise();
}

void Hypergraph::normalise() {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  vertices_.clear();
  for (const Hyperedge& h : edges_) vertices_.insert(vertices_.end(), h.edges.begin(), h.edges.end());
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());
}

int Hypergraph::clique_count() const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const Hyperedge& h) { return h.kind == HyperedgeKind::Clique; }));
}

int Hypergraph::cycle_count() const { return static_cast<int>(edges_.size()) - clique_count(); }

bool Hypergraph::contains(const Hyperedge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

bool Hypergraph::contains_all(const Hypergraph& other) const {
  return std::includes(edges_.begin(), edges_.end(), other.edges_.begin(), other.edges_.end());
}

Hypergraph Hypergraph::without_hyperedge(std::size_t index) const {
  if (index >= edges_.size()) throw ArgumentError("hyperedge index out of range");
  Hypergraph out(host_);
  out.edges_ = edges_;
  out.edges_.erase(out.edges_.begin() + static_cast<std::ptrdiff_t>(index));
  out.normalise();
  return out;
}

Hypergraph Hypergraph::without_hypervertex(int edge_id) const {
  Hypergraph out(host_);
  for (const Hyperedge& h : edges_) {
    if (!h.contains(edge_id)) out.edges_.push_back(h);
  }
  out.normalise();
  return out;
}

Hypergraph Hypergraph::with(std::span<const Hyperedge> extra) const {
  Hypergraph out(host_);
  out.edges_ = edges_;
  out.edges_.insert(out.edges_.end(), extra.begin(), extra.end());
  out.normalise();
  return out;
}

Hypergraph Hypergraph::relabel(std::span<const int> perm) const {
  Hypergraph out(host_.relabel(perm));
  out.edges_.reserve(edges_.size());
  for (const Hyperedge& h : edges_) out.edges_.push_back(h.relabel(perm));
  out.normalise();
  return out;
}

std::vector<Hyperedge> enum_cliques(const Graph& g, int r) {
  if (r < 2) throw ArgumentError("clique order must be >= 2");
  std::vector<Hyperedge> out;
  std::vector<int> stack;
  std::vector<Edge> edges;
  const auto rows = g.rows();
  auto extend = [&](auto&& self, VertexSet candidates) -> void {
    if (static_cast<int>(stack.size()) == r) {
      edges.clear();
      for (std::size_t i = 0; i < stack.size(); ++i) {
        for (std::size_t j = i + 1; j < stack.size(); ++j) edges.push_back(Edge{stack[i], stack[j]});
      }
      out.push_back(Hyperedge::from_edges(HyperedgeKind::Clique, edges));
      return;
    }
    const int missing = r - static_cast<int>(stack.size());
    while (popcount(candidates) >= missing) {
      const int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      stack.push_back(v);
      self(self, candidates & rows[v]);
      stack.pop_back();
    }
  };
  extend(extend, first_vertices(g.order()));
  return out;
}

std::vector<Hyperedge> enum_cycles(const Graph& g, int ell) {
  if (ell < 3) throw ArgumentError("cycle length must be >= 3");
  std::vector<Hyperedge> out;
  const auto rows = g.rows();
  std::vector<int> path;
  std::vector<Edge> edges;
  for (int s = 0; s < g.order(); ++s) {
    const VertexSet allowed = ~first_vertices(s + 1);  // vertices larger than the start
    path.assign(1, s);
    auto walk = [&](auto&& self, VertexSet used) -> void {
      const int last = path.back();
      if (static_cast<int>(path.size()) == ell) {
        if ((rows[last] & vertex_bit(s)) && path[1] < last) {
          edges.clear();
          for (int i = 0; i < ell; ++i) edges.push_back(make_edge(path[i], path[(i + 1) % ell]));
          out.push_back(Hyperedge::from_edges(HyperedgeKind::Cycle, edges));
        }
        return;
      }
      VertexSet next = rows[last] & allowed & ~used;
      while (next) {
        const int v = std::countr_zero(next);
        next &= next - 1;
        path.push_back(v);
        self(self, used | vertex_bit(v));
        path.pop_back();
      }
    };
    walk(walk, vertex_bit(s));
  }
  return out;
}

Hypergraph build_hypergraph(const Graph& g, const PairParams& pp) {
  std::vector<Hyperedge> all = enum_cliques(g, pp.r());
  std::vector<Hyperedge> cycles = enum_cycles(g, pp.ell());
  all.insert(all.end(), std::make_move_iterator(cycles.begin()), std::make_move_iterator(cycles.end()));
  return Hypergraph(g, std::move(all));
}

Subgraph underlying_graph(const Hypergraph& h) {
  Subgraph s(h.host().order());
  for (int id : h.hypervertices()) s.add_edge(edge_from_id(id));
  return s;
}

namespace {

CanonicalLabelling labelling_with_mark(const Hypergraph& h, std::span<const int> marked, std::uint64_t tag) {
  const int n = h.host().order();
  const Subgraph under = underlying_graph(h);
  std::vector<int> clique_hits(static_cast<std::size_t>(n), 0);
  std::vector<int> cycle_hits(static_cast<std::size_t>(n), 0);
  std::vector<int> mark_hits(static_cast<std::size_t>(n), 0);
  for (const Hyperedge& e : h.hyperedges()) {
    VertexSet vs = e.vertices();
    while (vs) {
      const int v = std::countr_zero(vs);
      vs &= vs - 1;
      (e.kind == HyperedgeKind::Clique ? clique_hits : cycle_hits)[v]++;
    }
  }
  for (int id : marked) {
    const Edge e = edge_from_id(id);
    mark_hits[e.u]++;
    mark_hits[e.v]++;
  }
  // Colour = rank of (in underlying graph, clique incidences, cycle
  // incidences, marked incidences).
  using Key = std::tuple<int, int, int, int>;
  std::vector<Key> keys;
  keys.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) keys.emplace_back(under.has_vertex(v) ? 1 : 0, clique_hits[v], cycle_hits[v], mark_hits[v]);
  std::vector<Key> distinct = keys;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  CanonicalInput in;
  in.n = n;
  in.adjacency = under.edge_graph().rows();
  in.colors.reserve(static_cast<std::size_t>(n));
  for (const auto& k : keys) {
    in.colors.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), k) - distinct.begin()));
  }
  // Colours only seed the refinement; the code carries the key values.
  CodeWords key_words;
  for (const auto& k : distinct) {
    key_words.push_back(static_cast<std::uint64_t>(std::get<0>(k)));
    key_words.push_back(static_cast<std::uint64_t>(std::get<1>(k)));
    key_words.push_back(static_cast<std::uint64_t>(std::get<2>(k)));
    if (!marked.empty()) key_words.push_back(static_cast<std::uint64_t>(std::get<3>(k)));
  }
  const auto map_id = [](std::span<const int> position, int id) {
    const Edge ed = edge_from_id(id);
    return static_cast<std::uint64_t>(edge_id(make_edge(position[ed.u], position[ed.v])));
  };
  in.encode = [&](std::span<const int> position) {
    std::vector<std::vector<std::uint64_t>> mapped;
    mapped.reserve(h.size());
    for (const Hyperedge& e : h.hyperedges()) {
      std::vector<std::uint64_t> ids;
      ids.reserve(e.edges.size() + 1);
      ids.push_back(static_cast<std::uint64_t>(e.kind));
      for (int id : e.edges) ids.push_back(map_id(position, id));
      std::sort(ids.begin() + 1, ids.end());
      mapped.push_back(std::move(ids));
    }
    std::sort(mapped.begin(), mapped.end());
    CodeWords words = key_words;
    words.push_back(mapped.size());
    for (const auto& ids : mapped) {
      words.push_back(ids.size());
      words.insert(words.end(), ids.begin(), ids.end());
    }
    if (!marked.empty()) {
      std::vector<std::uint64_t> ids;
      for (int id : marked) ids.push_back(map_id(position, id));
      std::sort(ids.begin(), ids.end());
      words.push_back(tag);
      words.push_back(ids.size());
      words.insert(words.end(), ids.begin(), ids.end());
    }
    return words;
  };
  return canonical_labelling(in);
}

}  // namespace

CanonicalLabelling hypergraph_canonical_labelling(const Hypergraph& h) { return labelling_with_mark(h, {}, 0); }

CanonicalLabelling hypergraph_canonical_labelling(const Hypergraph& h, std::span<const int> marked, std::uint64_t tag) {
  return labelling_with_mark(h, marked, tag);
}

}  // namespace krcl
