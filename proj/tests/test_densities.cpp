#include <doctest.h>

#include <random>
#include <set>

#include "krcl/canonical.hpp"
#include "krcl/densities.hpp"
#include "support.hpp"

using namespace krcl;

namespace {

Rational q(std::int64_t n, std::int64_t d = 1) { return Rational(n, d); }

Rational m2_cycle_closed(int ell) { return m2_closed(ClosedForm::Cycle, 0, ell); }

// All graphs on k vertices up to isomorphism.
std::vector<Graph> classes_on(int k) {
  std::set<std::string> seen;
  std::vector<Graph> out;
  const int pairs = k * (k - 1) / 2;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << pairs); ++mask) {
    Graph g(k);
    int bit = 0;
    for (int v = 1; v < k; ++v) {
      for (int u = 0; u < v; ++u, ++bit) {
        if (mask >> bit & 1u) g.add_edge(u, v);
      }
    }
    if (seen.insert(canonical_code(g)).second) out.push_back(g);
  }
  return out;
}

}  // namespace

TEST_CASE("rational arithmetic") {
  CHECK(q(6, 4) == q(3, 2));
  CHECK(q(3, -6) == q(-1, 2));
  CHECK(q(3, -6).den() == 2);
  CHECK(q(1, 3) + q(1, 6) == q(1, 2));
  CHECK(q(1, 3) - q(1, 2) == q(-1, 6));
  CHECK(q(2, 3) * q(3, 4) == q(1, 2));
  CHECK(q(2, 3) / q(4, 9) == q(3, 2));
  CHECK(q(-1, 3) < q(-1, 4));
  CHECK(q(7, 2).to_string() == "7/2");
  CHECK(q(-4, 2).to_string() == "-2");
  CHECK_THROWS_AS(q(1, 0), DomainError);
  CHECK_THROWS_AS(q(1) / q(0), DomainError);
  CHECK_THROWS_AS(q(INT64_MAX) + q(1), OverflowError);
  CHECK_THROWS_AS(q(INT64_MAX / 2, 1) * q(3), OverflowError);
}

TEST_CASE("edge density examples") {
  CHECK(edge_density(Graph::complete(4)) == q(3, 2));
  CHECK(edge_density(Graph::cycle(5)) == q(1));
  CHECK(edge_density(Graph(1)) == q(0));
  CHECK_THROWS_AS(edge_density(Graph(0)), ArgumentError);
}

TEST_CASE("m2 examples") {
  CHECK(m2(Graph::cycle(4)) == q(3, 2));
  CHECK(m2(Graph::complete(4)) == q(5, 2));
  CHECK(m2(Graph::complete(5)) == q(3));
  CHECK_THROWS_AS(m2(Graph::complete(2)), DomainError);
}

TEST_CASE("m2_pair examples") {
  CHECK(m2_pair(Graph::complete(4), Graph::cycle(4)) == q(9, 4));
  CHECK(m2_pair(Graph::complete(4), Graph::cycle(5)) == q(24, 11));
  CHECK(m2_pair(Graph::complete(5), Graph::cycle(4)) == q(30, 11));
  CHECK_THROWS_AS(m2_pair(Graph(3), Graph::cycle(4)), DomainError);
}

TEST_CASE("closed forms") {
  CHECK(m2_closed(ClosedForm::Cycle, 0, 6) == q(5, 4));
  CHECK(m2_closed(ClosedForm::Clique, 6, 0) == q(7, 2));
  CHECK(m2_closed(ClosedForm::Pair, 4, 4) == q(9, 4));
  CHECK(m2(Graph::cycle(6)) == q(5, 4));
  CHECK(m2(Graph::complete(6)) == q(7, 2));
}

TEST_CASE("closed forms equal brute force for r in [3,7], ell in [3,8]") {
  for (int ell = 3; ell <= 8; ++ell) CHECK(m2_closed(ClosedForm::Cycle, 0, ell) == m2(Graph::cycle(ell)));
  for (int r = 3; r <= 7; ++r) {
    CHECK(m2_closed(ClosedForm::Clique, r, 0) == m2(Graph::complete(r)));
    for (int ell = 3; ell <= 8; ++ell) {
      CAPTURE(r);
      CAPTURE(ell);
      CHECK(m2_closed(ClosedForm::Pair, r, ell) == m2_pair(Graph::complete(r), Graph::cycle(ell)));
      CHECK(PairParams(r, ell).m2_pair() == m2_closed(ClosedForm::Pair, r, ell));
    }
  }
}

TEST_CASE("strict monotonicity and the r/2 sandwich") {
  for (int r = 4; r <= 7; ++r) {
    for (int ell = 4; ell <= 9; ++ell) {
      const Rational m = m2_closed(ClosedForm::Pair, r, ell);
      CHECK(q(r, 2) < m);
      CHECK(m < m2_closed(ClosedForm::Clique, r, 0));
      if (ell < 9) CHECK(m2_closed(ClosedForm::Pair, r, ell + 1) < m);
    }
  }
}

TEST_CASE("f_ell(t) increases in t") {
  for (int ell = 4; ell <= 8; ++ell) {
    const Rational inv = q(1) / m2_cycle_closed(ell);
    auto f = [&](int t) { return q(t * (t - 1) / 2) / (q(t - 2) + inv); };
    for (int t = 3; t < 10; ++t) CHECK(f(t) < f(t + 1));
  }
}

TEST_CASE("lambda examples") {
  const PairParams pp(4, 4);
  CHECK(lambda(Graph::complete(4), pp) == q(4, 3));
  CHECK(lambda(Graph(7), pp) == q(7));
  CHECK(lambda(Graph::complete(2), pp) == q(14, 9));
  CHECK(pp.lambda_clique() == q(4, 3));
}

TEST_CASE("beta examples") {
  const PairParams pp(4, 4);
  CHECK(beta(Graph::complete(4), pp) == q(0));
  CHECK(beta(Graph::complete(2), pp) == q(-2, 9));
  CHECK(beta(Graph::complete(2), pp) == q(1) / pp.m2_pair() - q(2, 3));
  CHECK(beta(Graph::complete(3), pp) == q(-1, 3));
  CHECK_THROWS_AS(beta(Graph::complete(5), pp), DomainError);
}

TEST_CASE("epsilon examples") {
  CHECK(epsilon(4, 4) == q(1, 24));
  CHECK(epsilon(5, 4) == q(1, 9));
  CHECK(epsilon(4, 5) == q(1, 8));
  CHECK(PairParams(4, 4).epsilon() == q(1, 24));
  CHECK_FALSE(PairParams(3, 4).epsilon().has_value());
  CHECK_THROWS_AS(epsilon(3, 4), DomainError);
  CHECK_THROWS_AS(PairParams(3, 5).epsilon_or_throw(), DomainError);
  CHECK_THROWS_AS(PairParams(2, 5), DomainError);
  for (int r = 4; r <= 8; ++r) {
    for (int ell = 4; ell <= 8; ++ell) CHECK(epsilon(r, ell).is_positive());
  }
}

TEST_CASE("critical density floor exceeds m2(K_r, C_4)") {
  for (int r = 4; r <= 12; ++r) CHECK(critical_density_floor(r) > m2_closed(ClosedForm::Pair, r, 4));
}

TEST_CASE("beta claims over every proper subgraph class of K_r") {
  for (int r = 4; r <= 6; ++r) {
    for (int ell = 4; ell <= 7; ++ell) {
      const PairParams pp(r, ell);
      const Rational bk2 = beta(Graph::complete(2), pp);
      CHECK(bk2 == q(1) / pp.m2_pair() - q(ell - 2, ell - 1));
      CHECK(bk2 > q(-1));
      for (int k = 2; k <= r; ++k) {
        for (const Graph& j : classes_on(k)) {
          if (k == r && j.size() == r * (r - 1) / 2) continue;
          const Rational b = beta(j, pp);
          CHECK(b < q(0));
          bool leaf = false;
          for (int v = 0; v < k; ++v) leaf = leaf || j.degree(v) == 1;
          if (leaf) {
            CHECK(b <= bk2);
            CHECK((b == bk2) == (k == 2 && j.size() == 1));
          }
        }
      }
    }
  }
}

TEST_CASE("lambda increment examples") {
  const PairParams pp(4, 4);
  Subgraph f1(10);
  for (auto [u, v] : {std::pair{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}}) f1.add_edge(make_edge(u, v));
  Subgraph inside(10);
  inside.add_edge({0, 1});
  inside.add_edge({1, 2});
  CHECK(lambda_increment(f1, inside, pp) == q(0));

  Subgraph far(10);
  for (int u = 5; u < 9; ++u) {
    for (int v = u + 1; v < 9; ++v) far.add_edge({u, v});
  }
  CHECK(lambda_increment(f1, far, pp) == pp.lambda_clique());

  Subgraph glued(10);  // K4 on {0,1,8,9} meets f1 in the edge {0,1}
  for (int a : {0, 1, 8, 9}) {
    for (int b : {0, 1, 8, 9}) {
      if (a < b) glued.add_edge({a, b});
    }
  }
  CHECK(lambda_increment(f1, glued, pp) == beta(Graph::complete(2), pp));
}

TEST_CASE("lambda increment identity on random labelled pairs") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 500; ++round) {
    const PairParams pp(4 + static_cast<int>(rng() % 3), 4 + static_cast<int>(rng() % 4));
    const int n = 6 + static_cast<int>(rng() % 8);
    const Graph host = test::random_graph(n, 0.7, rng);
    Subgraph f[2] = {Subgraph(n), Subgraph(n)};
    for (Subgraph& s : f) {
      for (const Edge& e : host.edges()) {
        if (rng() % 2) s.add_edge(e);
      }
      if (rng() % 3 == 0) s.add_vertex(static_cast<int>(rng() % n));
    }
    CHECK(lambda_increment(f[0], f[1], pp) == lambda(subgraph_union(f[0], f[1]), pp) - lambda(f[0], pp));
  }
}
