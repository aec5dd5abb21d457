#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "krcl/densities.hpp"
#include "krcl/hypergraph.hpp"
#include "krcl/hypertree.hpp"
#include "krcl/rational.hpp"
#include "krcl/solver.hpp"

namespace krcl {

/// Uniform double in [0,1) from the counter (seed, trial, index); a pure
/// function, so every trial draws the same values whatever thread runs it.
double stream_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) noexcept;

/// G(n,p) with edge {u,v} present iff its uniform draw is below p. Draws are
/// keyed by edge id, so samples at p <= p' for one trial are nested.
Graph sample_gnp(int n, double p, std::uint64_t seed, std::uint64_t trial);

enum class GridKind { Probability, Prefactor };

struct McConfig {
  int n = 0;
  int r = 4;
  int ell = 4;
  GridKind grid_kind = GridKind::Prefactor;
  std::vector<double> grid;  // p values, or c with p = c n^{-1/m2(K_r,C_ell)}
  int trials = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = SolverOptions{}.budget;
  double z = 1.96;  // Wilson interval quantile
};

/// p for one grid value. Throws ArgumentError outside [0,1].
double grid_probability(const McConfig& cfg, double value);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;

  friend bool operator==(const WilsonInterval&, const WilsonInterval&) = default;
};

/// Score interval for `successes` out of `total`; [0,1] when total is 0.
WilsonInterval wilson_interval(int successes, int total, double z);

struct McRow {
  double p = 0.0;
  std::optional<double> c;
  int ramsey = 0;
  int not_ramsey = 0;
  int budget_exceeded = 0;
  WilsonInterval interval;  // over decided trials only

  int decided() const noexcept { return ramsey + not_ramsey; }
  double frequency() const noexcept { return decided() == 0 ? 0.0 : static_cast<double>(ramsey) / decided(); }
  friend bool operator==(const McRow&, const McRow&) = default;
};

struct McReport {
  McConfig config;
  std::vector<McRow> rows;

  bool budget_incomplete() const;
};

/// Runs every (grid point, trial) pair on `threads` workers. The result does
/// not depend on the thread count. Throws ArgumentError on a bad config.
McReport mc_threshold(const McConfig& cfg, int threads = 1);

/// Frequencies nondecreasing along the grid, except where the two Wilson
/// intervals overlap.
bool monotone_up_to_overlap(const McReport& report);

enum class CorpusKind { Graph, Critical, Trace };
const char* to_string(CorpusKind kind) noexcept;

struct TraceRecord {
  HyperTreeTrace trace;
  Hypergraph input;  // what the trace is audited against
};

struct CorpusItem {
  std::string name;
  CorpusKind kind = CorpusKind::Graph;
  std::variant<Graph, Hypergraph, TraceRecord> payload;
};

enum class RowStatus { Pass, Fail, Budget };
const char* to_string(RowStatus status) noexcept;

struct VerifyRow {
  std::string item;
  std::string lemma;
  RowStatus status = RowStatus::Pass;
  std::string detail;  // counterexample or note

  friend bool operator==(const VerifyRow&, const VerifyRow&) = default;
};

struct VerifyReport {
  int r = 0;
  int ell = 0;
  std::vector<VerifyRow> rows;

  bool any_fail() const;
  bool any_budget() const;
  /// 0 all pass, 2 some failure, 3 only budget gaps.
  int exit_code() const;
};

struct VerifyOptions {
  SolverOptions solver;
  bool check_minimality = true;  // Ramsey-minimal probes on critical inputs
};

/// Runs every applicable invariant on each item. Failures are rows, never
/// exceptions, apart from argument errors.
VerifyReport verify_lemmas(const std::vector<CorpusItem>& corpus, const PairParams& pp, const VerifyOptions& options = {});

/// Reads *.txt / *.graph as graphs and *.json as hypergraph or trace
/// documents, in file-name order.
std::vector<CorpusItem> load_corpus(const std::string& dir, const PairParams& pp);

struct OutEntry {
  std::string code;  // hex canonical code of the fingerprint
  Graph representative;  // compacted fingerprint
  FingerprintTag tag = FingerprintTag::J1;
  std::string first_input;
};

struct OutCollection {
  int n = 0;
  int step_budget = 0;
  std::vector<OutEntry> entries;  // ascending by code
  std::vector<std::pair<std::string, std::string>> provenance;  // input name -> code

  std::size_t size() const noexcept { return entries.size(); }
};

/// Runs the tree procedure on each input and keeps one fingerprint per
/// isomorphism class. In batch mode the other inputs act as peers.
OutCollection collect_out(const std::vector<std::pair<std::string, Hypergraph>>& inputs, const PairParams& pp, int n,
                          RestrictionMode mode = RestrictionMode::SingleInput);

struct BoundReport {
  int r = 0;
  int ell = 0;
  int n = 0;
  Rational m;        // lambda(K_r) unless overridden
  Rational epsilon;
  double c = 0.0;    // 2^{-2M}
  double log2_n = 0.0;
  double polylog = 0.0;  // (log2 n)^M
  double n_pow_eps = 0.0;  // n^{-eps}
  double n_pow_m = 0.0;    // n^{-M}
  double bound = 0.0;
  std::optional<std::size_t> out_size;
};

/// (log2 n)^M (n^{-eps} + n^{-M}) with the given or default constants.
/// Throws ArgumentError for n < 2, DomainError outside r, ell >= 4 when
/// epsilon is not supplied.
BoundReport union_bound_report(const PairParams& pp, int n, std::optional<Rational> m = std::nullopt,
                               std::optional<Rational> epsilon = std::nullopt,
                               std::optional<std::size_t> out_size = std::nullopt);

}  // namespace krcl
