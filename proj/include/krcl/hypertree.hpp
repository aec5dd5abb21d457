#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "krcl/densities.hpp"
#include "krcl/hypergraph.hpp"
#include "krcl/rational.hpp"

namespace krcl {

/// Bijection from the edges of a graph to 1..e. Unlabelled edges report 0.
class EdgeLabelling {
 public:
  EdgeLabelling() = default;

  std::size_t size() const noexcept { return by_label_.size(); }
  int label_of(int edge_id) const;
  bool labelled(int edge_id) const { return label_of(edge_id) != 0; }
  /// Edge ids in label order (label k at index k-1).
  const std::vector<int>& edges_by_label() const noexcept { return by_label_; }

  /// Appends `edge_id` with the next label.
  void push(int edge_id);
  EdgeLabelling relabel(std::span<const int> perm) const;

  friend bool operator==(const EdgeLabelling& a, const EdgeLabelling& b) { return a.by_label_ == b.by_label_; }

 private:
  std::vector<int> by_label_;
  std::vector<int> label_;  // indexed by edge id
};

/// The fixed labelling of a clique: its vertices in ascending order and the
/// edges labelled lexicographically.
EdgeLabelling initial_labelling(const Hyperedge& clique);

/// Canonical extension: old labels kept, new edges get e(G_prev)+1..e(G_new)
/// in an order fixed by the anchored canonical form of the new-edge graph,
/// anchors being its vertices in G_prev ranked by their incident old labels.
/// Throws ArgumentError unless `sigma_prev` labels exactly E(G_prev) and
/// G_prev ⊆ G_new.
EdgeLabelling extend_labelling(const EdgeLabelling& sigma_prev, const Subgraph& g_prev, const Subgraph& g_new);

/// Deterministic order on hyperedges: kind, then the sorted tuple of edge
/// keys, where a labelled edge's key is its label and any other edge ranks
/// after all labels by host edge id.
bool hyperedge_less(const Hyperedge& a, const Hyperedge& b, const EdgeLabelling& sigma);

enum class RestrictionMode { SingleInput, Batch };
const char* to_string(RestrictionMode mode) noexcept;

/// {E in H : E ⊆ V(H_prev)} for one input, or the union over `inputs` in
/// batch mode. Throws ArgumentError on an empty input list, and
/// PreconditionError when an input does not contain H_prev.
Hypergraph restricted_hypergraph(const Hypergraph& h_prev, std::span<const Hypergraph> inputs, RestrictionMode mode);

struct Flower {
  int seed = -1;  // edge e0
  Hyperedge cycle;
  std::vector<std::pair<int, Hyperedge>> petals;  // cycle edge outside G_prev -> petal, ascending by edge id

  std::vector<Hyperedge> hyperedges() const;
};

/// One Flower call. `restriction` is the hypergraph whose cycle hyperedges
/// decide the seed (see restricted_hypergraph). Throws LemmaViolation when
/// the seed, the cycle or a petal does not exist, or the result breaks F1-F3.
Flower flower_run(const Hypergraph& h_prev, const Hypergraph& h, const Hypergraph& restriction, const EdgeLabelling& sigma,
                  const PairParams& pp);

enum class StepKind { Init, CliqueAttach, FlowerAttach };
const char* to_string(StepKind kind) noexcept;

enum class StopReason { LambdaReached, StepBudget };
const char* to_string(StopReason reason) noexcept;

enum class FingerprintTag { J1, J2, Unclassified };
const char* to_string(FingerprintTag tag) noexcept;

struct FingerprintClass {
  FingerprintTag tag = FingerprintTag::Unclassified;
  Rational epsilon;
  Rational m;  // lambda(K_r)
  int edge_count = 0;
  Rational lambda;
};

/// J1 when lambda <= -eps, else J2 when lambda <= lambda(K_r) and
/// 2^e >= n, else Unclassified.
FingerprintClass classify_fingerprint(const Subgraph& gf, const PairParams& pp, int n);
FingerprintClass classify_fingerprint(const Graph& gf, const PairParams& pp, int n);

struct TraceStep {
  int index = 0;
  StepKind kind = StepKind::Init;
  Hypergraph hypergraph;  // H_i
  std::vector<int> degenerate_steps;  // D_i
  EdgeLabelling sigma;
  Rational lambda;
  int new_vertices = 0;  // graph vertices added in this step
  bool degenerate = false;
  std::optional<Hyperedge> clique;  // CliqueAttach (and Init)
  std::optional<Flower> flower;     // FlowerAttach
};

struct HyperTreeTrace {
  std::vector<TraceStep> steps;
  StopReason stop_reason = StopReason::StepBudget;
  int n = 0;
  int step_budget = 0;  // ceil(log2 n)
  Subgraph fingerprint;
  FingerprintClass fingerprint_class;

  int stopping_time() const { return static_cast<int>(steps.size()) - 1; }
  const std::vector<int>& degenerate_steps() const { return steps.back().degenerate_steps; }
  /// Trace under a vertex relabelling of the host.
  HyperTreeTrace relabel(std::span<const int> perm) const;
};

struct HyperTreeOptions {
  RestrictionMode mode = RestrictionMode::SingleInput;
  std::optional<int> n;  // overrides the host order in the step budget
  /// Other critical hypergraphs on the same host, used in batch mode.
  std::vector<Hypergraph> peers;
};

/// ceil(log2 n) for n >= 1.
int ceil_log2(int n);

/// Runs the tree-building procedure on a star-critical hypergraph. The run
/// happens on a canonical relabelling of `h` and the trace is mapped back,
/// so isomorphic inputs give isomorphic traces. Throws PreconditionError on
/// a non-critical input or a host with fewer than two vertices,
/// DomainError outside r, ell >= 4, and LemmaViolation on an internal
/// contract breach.
HyperTreeTrace hypertree_run(const Hypergraph& h, const PairParams& pp, const HyperTreeOptions& options = {});

struct StepAudit {
  bool ok = true;
  std::vector<std::string> failures;  // each names the failed inequality
  Rational lambda_change;
  // Flower steps only.
  Rational cycle_increment;
  int petal_sequence_length = 0;  // t
  int a0 = 0;                     // |A_0|
};

/// Re-derives the lambda change of a flower step through the petal
/// sequence and checks every inequality of the decomposition.
StepAudit audit_flower_step(const TraceStep& prev, const TraceStep& step, const PairParams& pp);

/// lambda change of a clique step equals beta(G_prev ∩ K) < 0.
StepAudit audit_clique_step(const TraceStep& prev, const TraceStep& step, const PairParams& pp);

struct TraceAudit {
  bool ok = true;
  std::vector<std::string> failures;
  std::optional<Rational> delta_obs;  // least decrease over degenerate steps
  std::vector<StepAudit> steps;       // per step from 1
};

/// Every structural property a trace must satisfy: the shape of H_0,
/// growth, nesting, stopping rule, per-step lambda behaviour and audits,
/// e(G_i) = |V(H_i)|, lambda(G_T) <= lambda(K_r), the bound on |D_T| and a
/// J1/J2 class.
TraceAudit audit_trace(const HyperTreeTrace& trace, const Hypergraph& input, const PairParams& pp);

}  // namespace krcl
