#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krcl/densities.hpp"
#include "krcl/hypergraph.hpp"

namespace krcl {

enum class ArrowStatus { NotRamsey, Ramsey, BudgetExceeded };

const char* to_string(ArrowStatus status) noexcept;

struct SearchStats {
  std::uint64_t nodes = 0;         // branching decisions
  std::uint64_t propagations = 0;  // colour assignments, decisions included
};

/// Colour in {1, 2} for each hypervertex (host edge id), ascending by id.
struct ColoringWitness {
  std::vector<std::pair<int, int>> colors;

  /// 0 when the edge is not coloured by this witness.
  int color_of(int edge_id) const;
};

struct ArrowDecision {
  ArrowStatus status = ArrowStatus::NotRamsey;
  std::optional<ColoringWitness> witness;  // present iff status == NotRamsey
  SearchStats stats;

  bool is_ramsey() const noexcept { return status == ArrowStatus::Ramsey; }
  bool decided() const noexcept { return status != ArrowStatus::BudgetExceeded; }
};

struct SolverOptions {
  std::uint64_t budget = 1'000'000'000;  // propagation steps
};

/// Decides whether every 2-colouring of the hypervertices makes some clique
/// hyperedge all-1 or some cycle hyperedge all-2. Backtracking over
/// hypervertices in ascending id order, colour 2 first, with unit
/// propagation on the hyperedges.
ArrowDecision arrow_hyper(const Hypergraph& h, const SolverOptions& options = {});

/// Graph-level arrow G -> (K_r, C_ell). The witness covers every host edge;
/// edges outside all hyperedges get colour 1.
ArrowDecision arrow_graph(const Graph& g, const PairParams& pp, const SolverOptions& options = {});

/// Re-checks a non-arrow witness by scanning every hyperedge directly.
bool witness_is_valid(const Hypergraph& h, const ColoringWitness& witness);

struct MinimizeOptions {
  SolverOptions solver;
  /// When set, hyperedge deletion order is shuffled with this seed instead of
  /// descending.
  std::optional<std::uint64_t> shuffle_seed;
};

/// Greedy deletion to a Ramsey-minimal sub-hypergraph: hyperedges from last
/// to first, then hypervertices ascending, keeping each removal that leaves
/// the hypergraph Ramsey. Throws PreconditionError if `h` is not Ramsey and
/// BudgetExceeded if any check runs out of budget.
Hypergraph minimize(const Hypergraph& h, const MinimizeOptions& options = {});

/// Outcome of the single-removal probes on a Ramsey-minimal candidate.
struct MinimalityReport {
  bool ramsey = false;
  bool minimal = false;
  std::string failure;
};
MinimalityReport check_ramsey_minimal(const Hypergraph& h, const SolverOptions& options = {});

struct StarCriticalCertificate {
  bool critical = false;
  std::optional<int> uncovered_hypervertex;           // condition (i) fails here
  std::optional<std::pair<Hyperedge, int>> unshielded;  // condition (ii): (cycle, edge) without a private clique
  std::string describe() const;
};

/// (i) every hypervertex lies in a cycle hyperedge, and (ii) for every cycle
/// hyperedge F and every e in F some clique hyperedge E has E ∩ F = {e}.
StarCriticalCertificate is_star_critical(const Hypergraph& h);

/// Both directions of the private-intersection property: for each hyperedge
/// of either type and each of its hypervertices there is a hyperedge of the
/// other type meeting it exactly there. Vacuously true when empty.
StarCriticalCertificate ramsey_crit_full_check(const Hypergraph& h);

/// If G -> (K_r, C_ell), a Ramsey-minimal (hence critical) sub-hypergraph of
/// the Ramsey hypergraph of G; nullopt otherwise. Minimisation runs on a
/// canonical relabelling of G, so isomorphic inputs yield isomorphic outputs.
std::optional<Hypergraph> find_crit(const Graph& g, const PairParams& pp, const MinimizeOptions& options = {});

}  // namespace krcl
