#include "krcl/densities.hpp"

namespace krcl {

namespace {

std::int64_t choose2(std::int64_t k) { return k * (k - 1) / 2; }

// Induced edge count for every vertex subset of a small graph.
template <typename Visit>
void for_each_induced(const Graph& g, Visit&& visit) {
  const int n = g.order();
  if (n > 24) throw DomainError("brute-force density needs at most 24 vertices, got " + std::to_string(n));
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < limit; ++s) {
    int edges = 0;
    std::uint64_t rest = s;
    while (rest) {
      const int v = std::countr_zero(rest);
      rest &= rest - 1;
      edges += popcount(g.rows()[v] & s);
    }
    visit(popcount(s), edges / 2);
  }
}

}  // namespace

PairParams::PairParams(int r, int ell) : r_(r), ell_(ell) {
  if (r < 3 || ell < 3) throw DomainError("pair parameters need r >= 3 and ell >= 3");
  m2_pair_ = m2_closed(ClosedForm::Pair, r, ell);
  if (tree_regime()) epsilon_ = krcl::epsilon(r, ell);
  lambda_clique_ = Rational(r) - Rational(clique_edges()) / m2_pair_;
}

const Rational& PairParams::epsilon_or_throw() const {
  if (!epsilon_) {
    throw DomainError("stopping constant is only defined for r, ell >= 4 (got r=" + std::to_string(r_) +
                      ", ell=" + std::to_string(ell_) + ")");
  }
  return *epsilon_;
}

Rational edge_density(const Graph& g) {
  if (g.order() == 0) throw ArgumentError("edge density of a graph without vertices");
  return Rational(g.size(), g.order());
}

Rational edge_density(const Subgraph& g) {
  if (g.vertex_count() == 0) throw ArgumentError("edge density of a graph without vertices");
  return Rational(g.edge_count(), g.vertex_count());
}

Rational m2(const Graph& f) {
  if (f.order() < 3) throw DomainError("m2 needs a graph with at least 3 vertices");
  std::optional<Rational> best;
  for_each_induced(f, [&](int v, int e) {
    if (v < 3) return;
    const Rational q(e - 1, v - 2);
    if (!best || q > *best) best = q;
  });
  return *best;
}

Rational m2_pair(const Graph& f, const Graph& h) {
  if (f.size() == 0) throw DomainError("m2(F,H) needs F with at least one edge");
  const Rational inv = Rational(1) / m2(h);
  std::optional<Rational> best;
  for_each_induced(f, [&](int v, int e) {
    if (e == 0) return;
    const Rational q = Rational(e) / (Rational(v - 2) + inv);
    if (!best || q > *best) best = q;
  });
  return *best;
}

Rational m2_closed(ClosedForm form, int r, int ell) {
  switch (form) {
    case ClosedForm::Cycle:
      if (ell < 3) throw DomainError("cycle length must be >= 3");
      return Rational(ell - 1, ell - 2);
    case ClosedForm::Clique:
      if (r < 3) throw DomainError("clique order must be >= 3");
      return Rational(r + 1, 2);
    case ClosedForm::Pair:
      if (r < 2 || ell < 3) throw DomainError("pair needs r >= 2, ell >= 3");
      return Rational(choose2(r)) / (Rational(r - 2) + Rational(ell - 2, ell - 1));
  }
  throw ArgumentError("unknown closed form");
}

Rational lambda(const Subgraph& g, const PairParams& pp) {
  return Rational(g.vertex_count()) - Rational(g.edge_count()) / pp.m2_pair();
}

Rational lambda(const Graph& g, const PairParams& pp) {
  return Rational(g.order()) - Rational(g.size()) / pp.m2_pair();
}

Rational beta(int vertices, int edges, const PairParams& pp) {
  if (vertices > pp.r()) {
    throw DomainError("beta needs v(J) <= r (got " + std::to_string(vertices) + " > " + std::to_string(pp.r()) + ")");
  }
  return Rational(pp.r() - vertices) - Rational(pp.clique_edges() - edges) / pp.m2_pair();
}

Rational beta(const Graph& j, const PairParams& pp) { return beta(j.order(), j.size(), pp); }
Rational beta(const Subgraph& j, const PairParams& pp) { return beta(j.vertex_count(), j.edge_count(), pp); }

Rational critical_density_floor(int r) { return Rational(r + 1, 2) - Rational(3, 2 * (r + 3)); }

Rational epsilon(int r, int ell) {
  if (r < 4 || ell < 4) throw DomainError("epsilon(r, ell) is defined for r, ell >= 4 only");
  const Rational m2 = m2_closed(ClosedForm::Pair, r, ell);
  return Rational(choose2(r)) * (Rational(1) / m2 - Rational(1) / critical_density_floor(r));
}

Rational epsilon(const PairParams& pp) { return epsilon(pp.r(), pp.ell()); }

Rational lambda_increment(const Subgraph& f1, const Subgraph& f2, const PairParams& pp) {
  const Subgraph common = subgraph_intersection(f1, f2);
  return Rational(f2.vertex_count() - common.vertex_count()) -
         Rational(f2.edge_count() - common.edge_count()) / pp.m2_pair();
}

}  // namespace krcl
