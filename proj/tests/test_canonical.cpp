#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "krcl/canonical.hpp"
#include "support.hpp"

using namespace krcl;

namespace {

Graph from_mask(int n, std::uint32_t mask) {
  Graph g(n);
  int bit = 0;
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u, ++bit) {
      if (mask >> bit & 1u) g.add_edge(u, v);
    }
  }
  return g;
}

bool brute_isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  std::vector<int> p(static_cast<std::size_t>(a.order()));
  std::iota(p.begin(), p.end(), 0);
  do {
    if (a.relabel(p) == b) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

Graph prism() {  // K3 x K2
  Graph g(6);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}}) g.add_edge(u, v);
  return g;
}

Graph k33() {
  Graph g(6);
  for (int u = 0; u < 3; ++u) {
    for (int v = 3; v < 6; ++v) g.add_edge(u, v);
  }
  return g;
}

}  // namespace

TEST_CASE("worked examples") {
  CHECK_FALSE(are_isomorphic(Graph::cycle(4), Graph::path(4)));
  std::mt19937_64 rng(3);
  const Graph c5 = Graph::cycle(5);
  CHECK(are_isomorphic(c5, c5.relabel(test::random_perm(5, rng))));
  CHECK_FALSE(are_isomorphic(k33(), prism()));
  CHECK_FALSE(brute_isomorphic(k33(), prism()));
}

// Codes are invariant under relabelling, so the number of distinct codes
// over all labelled graphs is at most the number of isomorphism classes;
// equality with the known class counts means codes separate classes.
TEST_CASE("exhaustive class counts up to 7 vertices") {
  const int classes[] = {1, 1, 2, 4, 11, 34, 156, 1044};
  for (int n = 1; n <= 7; ++n) {
    std::set<std::string> codes;
    const std::uint32_t total = std::uint32_t{1} << (n * (n - 1) / 2);
    for (std::uint32_t mask = 0; mask < total; ++mask) codes.insert(canonical_code(from_mask(n, mask)));
    CHECK(codes.size() == static_cast<std::size_t>(classes[n]));
  }
}

TEST_CASE("relabelling invariance") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 20; ++round) {
    const int n = 5 + static_cast<int>(rng() % 20);
    const Graph g = test::random_graph(n, 0.4, rng);
    const std::string code = canonical_code(g);
    for (int k = 0; k < 100; ++k) CHECK(canonical_code(g.relabel(test::random_perm(n, rng))) == code);
  }
  const Graph w3 = load_graph_file(test::data_path("w3.txt"));
  CHECK(canonical_code(w3.relabel(test::random_perm(40, rng))) == canonical_code(w3));
}

TEST_CASE("agreement with permutation search on random pairs") {
  std::mt19937_64 rng(5);
  int iso = 0;
  for (int round = 0; round < 200; ++round) {
    const int n = 4 + static_cast<int>(rng() % 5);
    const Graph a = test::random_graph(n, 0.5, rng);
    // Half the pairs are relabellings with one edge toggled back and forth.
    Graph b = round % 2 ? a.relabel(test::random_perm(n, rng)) : test::random_graph(n, 0.5, rng);
    if (round % 4 == 1) {
      const Edge e = b.edges().empty() ? Edge{0, 1} : b.edges().front();
      if (b.has_edge(e)) b.remove_edge(e.u, e.v);
      const Edge f{static_cast<int>(rng() % (n - 1)), n - 1};
      if (!b.has_edge(f)) b.add_edge(f);
    }
    const bool expect = brute_isomorphic(a, b);
    iso += expect;
    CHECK(are_isomorphic(a, b) == expect);
  }
  CHECK(iso > 20);
}

TEST_CASE("regular graphs with equal degree sequences") {
  // Two 3-regular graphs on 8 vertices: the cube and the Wagner graph.
  Graph cube(8);
  for (int v = 0; v < 8; ++v) {
    for (int b = 0; b < 3; ++b) {
      const int w = v ^ (1 << b);
      if (v < w) cube.add_edge(v, w);
    }
  }
  Graph wagner(8);
  for (int v = 0; v < 8; ++v) {
    wagner.add_edge(make_edge(v, (v + 1) % 8));
    if (v < 4) wagner.add_edge(v, v + 4);
  }
  CHECK_FALSE(are_isomorphic(cube, wagner));
  std::mt19937_64 rng(1);
  CHECK(are_isomorphic(cube, cube.relabel(test::random_perm(8, rng))));
}

TEST_CASE("anchored codes") {
  Subgraph edge(4);
  edge.add_edge({1, 3});
  Subgraph edge2(6);
  edge2.add_edge({0, 5});
  const int a13[] = {1, 3};
  const int a05[] = {0, 5};
  CHECK(anchored_canonical_code(edge, a13) == anchored_canonical_code(edge2, a05));

  // K4 anchored at one vertex: relabellings fixing the anchor.
  const Subgraph k4 = Subgraph::whole(Graph::complete(4));
  const int anchor0[] = {0};
  const std::vector<int> fix0 = {0, 2, 3, 1};
  CHECK(anchored_canonical_code(k4.relabel(fix0), anchor0) == anchored_canonical_code(k4, anchor0));

  const int outside[] = {7};
  CHECK_THROWS_AS(anchored_canonical_code(edge, outside), ArgumentError);
}

TEST_CASE("anchored codes separate attachments") {
  // A 4-cycle 0-1-2-3 with one triangle petal, anchored at the seed edge
  // {0,1}: petal on the edge opposite the seed versus adjacent to it.
  auto flower = [](Edge petal_base) {
    Subgraph s(5);
    for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}}) s.add_edge(make_edge(u, v));
    s.add_edge(make_edge(petal_base.u, 4));
    s.add_edge(make_edge(petal_base.v, 4));
    return s;
  };
  const int anchors[] = {0, 1};
  const std::string opposite = anchored_canonical_code(flower({2, 3}), anchors);
  const std::string adjacent = anchored_canonical_code(flower({1, 2}), anchors);
  CHECK(opposite != adjacent);
  // Unanchored the two graphs are isomorphic, so the anchors made the difference.
  CHECK(are_isomorphic(flower({2, 3}).compact(), flower({1, 2}).compact()));
  // Anchor order matters: adjacent-to-1 differs from adjacent-to-0 only under order.
  const int swapped[] = {1, 0};
  CHECK(anchored_canonical_code(flower({1, 2}), swapped) == anchored_canonical_code(flower({0, 3}), anchors));
}

TEST_CASE("anchored codes match permutation search") {
  // Equal codes iff some anchor-fixing permutation maps one onto the other.
  std::mt19937_64 rng(19);
  for (int round = 0; round < 150; ++round) {
    const int n = 5;
    const Graph a = test::random_graph(n, 0.5, rng);
    const Graph b = round % 3 ? test::random_graph(n, 0.5, rng) : a;
    const int anchors[] = {0, 1};
    std::vector<int> p = {0, 1, 2, 3, 4};
    bool expect = false;
    do {
      expect = expect || a.relabel(p) == b;
    } while (std::next_permutation(p.begin() + 2, p.end()));
    Subgraph sa = Subgraph::whole(a);
    Subgraph sb = Subgraph::whole(b);
    CHECK((anchored_canonical_code(sa, anchors) == anchored_canonical_code(sb, anchors)) == expect);
  }
}
