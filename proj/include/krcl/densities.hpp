#pragma once

#include <optional>

#include "krcl/graph.hpp"
#include "krcl/rational.hpp"

namespace krcl {

/// Clique order r and cycle length ell of the pair (K_r, C_ell), with the
/// derived constants every other module needs.
class PairParams {
 public:
  PairParams(int r, int ell);

  int r() const noexcept { return r_; }
  int ell() const noexcept { return ell_; }
  /// r >= 4 and ell >= 4: the regime in which the 0-statement argument runs.
  bool tree_regime() const noexcept { return r_ >= 4 && ell_ >= 4; }

  const Rational& m2_pair() const noexcept { return m2_pair_; }
  /// Stopping constant; present only in the r, ell >= 4 regime.
  const std::optional<Rational>& epsilon() const noexcept { return epsilon_; }
  const Rational& epsilon_or_throw() const;
  const Rational& lambda_clique() const noexcept { return lambda_clique_; }
  std::int64_t clique_edges() const noexcept { return static_cast<std::int64_t>(r_) * (r_ - 1) / 2; }
  /// Vertices added by a flower that leaves lambda unchanged: (r-1)(ell-1)-1.
  int perfect_flower_vertices() const noexcept { return (r_ - 1) * (ell_ - 1) - 1; }

 private:
  int r_;
  int ell_;
  Rational m2_pair_;
  std::optional<Rational> epsilon_;
  Rational lambda_clique_;
};

/// e(G)/v(G); throws ArgumentError on an empty vertex set.
Rational edge_density(const Graph& g);
Rational edge_density(const Subgraph& g);

/// max (e(J)-1)/(v(J)-2) over subgraphs J with v(J) >= 3, by enumeration of
/// vertex subsets. For a fixed vertex set the ratio only grows with e(J), so
/// induced subgraphs realise the maximum.
Rational m2(const Graph& f);

/// max e(J)/(v(J)-2+1/m2(H)) over subgraphs J of F with e(J) >= 1, by the
/// same induced-subgraph enumeration.
Rational m2_pair(const Graph& f, const Graph& h);

enum class ClosedForm { Cycle, Clique, Pair };

/// (ell-1)/(ell-2), (r+1)/2, or C(r,2)/(r-2+(ell-2)/(ell-1)). The argument
/// not used by a form is ignored.
Rational m2_closed(ClosedForm form, int r, int ell);

/// v(G) - e(G)/m2(K_r, C_ell)
Rational lambda(const Subgraph& g, const PairParams& pp);
Rational lambda(const Graph& g, const PairParams& pp);

/// r - v(J) - (C(r,2) - e(J))/m2(K_r, C_ell): the change in lambda caused by
/// attaching a copy of K_r that meets the current graph in J.
Rational beta(int vertices, int edges, const PairParams& pp);
Rational beta(const Graph& j, const PairParams& pp);
Rational beta(const Subgraph& j, const PairParams& pp);

/// C(r,2) * (1/m2(K_r,C_ell) - 1/m*) with m* = (r+1)/2 - 3/(2(r+3)), the
/// least edge density of a critical underlying graph. Domain: r, ell >= 4.
Rational epsilon(int r, int ell);
Rational epsilon(const PairParams& pp);

/// Lower bound on m(G) for underlying graphs of critical hypergraphs.
Rational critical_density_floor(int r);

/// v(F2) - v(F1∩F2) - (e(F2) - e(F1∩F2))/m2, which equals
/// lambda(F1∪F2) - lambda(F1).
Rational lambda_increment(const Subgraph& f1, const Subgraph& f2, const PairParams& pp);

}  // namespace krcl
