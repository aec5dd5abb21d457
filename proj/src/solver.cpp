#include "krcl/solver.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <random>
#include <span>
#include <string>

namespace krcl {

const char* to_string(ArrowStatus status) noexcept {
  switch (status) {
    case ArrowStatus::NotRamsey: return "not_ramsey";
    case ArrowStatus::Ramsey: return "ramsey";
    case ArrowStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "unknown";
}

int ColoringWitness::color_of(int edge_id) const {
  auto it = std::lower_bound(colors.begin(), colors.end(), std::make_pair(edge_id, 0));
  return it != colors.end() && it->first == edge_id ? it->second : 0;
}

namespace {

// Result of one search plus the hyperedges it touched.
struct SearchRun {
  ArrowDecision decision;
  std::vector<std::uint8_t> used;
};

// Backtracking 2-colouring search over the hypervertices, lowest index
// first, colour 2 before colour 1. Colour classes are bitsets of W words;
// colouring a hypervertex rescans the hyperedges of the matching kind
// through it: one with no member in the other colour and a single
// uncoloured member forces that member, and one coloured entirely in its
// own colour is a conflict. Hyperedges that force or conflict anywhere in
// the search are recorded: on a Ramsey answer they alone already refute
// every colouring.
template <std::size_t W>
class ArrowSolver {
 public:
  ArrowSolver(const std::vector<Hyperedge>& edges, const std::vector<int>& ids, std::vector<int> branch, std::uint64_t budget)
      : ids_(ids), branch_(std::move(branch)), budget_(budget) {
    const std::size_t n = ids_.size();
    value_.assign(n, 0);
    occurs_[0].resize(n);
    occurs_[1].resize(n);
    used_.assign(edges.size(), 0);
    for (std::size_t c = 0; c < edges.size(); ++c) {
      Entry entry{};
      entry.clause = static_cast<int>(c);
      std::vector<int> vars;
      for (int id : edges[c].edges) {
        const auto var = static_cast<std::size_t>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
        entry.mask[var / 64] |= std::uint64_t{1} << (var % 64);
        vars.push_back(static_cast<int>(var));
      }
      const int kind = static_cast<int>(edges[c].kind) - 1;
      for (int var : vars) occurs_[kind][static_cast<std::size_t>(var)].push_back(entry);
      if (vars.size() == 1) units_.push_back({vars[0], static_cast<std::uint8_t>(2 - kind), entry.clause});
    }
  }

  SearchRun solve() {
    SearchRun out;
    out.decision.status = run();
    out.decision.stats = stats_;
    if (out.decision.status == ArrowStatus::NotRamsey) {
      ColoringWitness w;
      w.colors.reserve(ids_.size());
      for (std::size_t v = 0; v < ids_.size(); ++v) w.colors.emplace_back(ids_[v], value_[v]);
      out.decision.witness = std::move(w);
    }
    out.used = std::move(used_);
    return out;
  }

 private:
  using Mask = std::array<std::uint64_t, W>;
  struct Entry {
    Mask mask;
    int clause;
  };
  struct Forced {
    int var;
    std::uint8_t colour;
    int clause;
  };
  struct Decision {
    int var;
    std::size_t trail;
    bool flipped;
    std::size_t pos;  // index into branch_
  };

  void set_bit(Mask& m, int var) { m[static_cast<std::size_t>(var) / 64] |= std::uint64_t{1} << (var % 64); }
  void clear_bit(Mask& m, int var) { m[static_cast<std::size_t>(var) / 64] &= ~(std::uint64_t{1} << (var % 64)); }

  // Returns false on conflict, after queueing every forced colour.
  bool assign(int var, std::uint8_t colour) {
    value_[static_cast<std::size_t>(var)] = colour;
    set_bit(colour_[colour - 1], var);
    trail_.push_back(var);
    ++stats_.propagations;
    const Mask& own = colour_[colour - 1];
    const Mask& other = colour_[2 - colour];
    bool ok = true;
    for (const Entry& e : occurs_[colour - 1][static_cast<std::size_t>(var)]) {
      bool satisfied = false;
      int open_count = 0;
      int open = -1;
      for (std::size_t w = 0; w < W; ++w) {
        if (e.mask[w] & other[w]) {
          satisfied = true;
          break;
        }
        const std::uint64_t rest = e.mask[w] & ~own[w];
        if (rest) {
          open_count += std::popcount(rest);
          open = static_cast<int>(w * 64) + std::countr_zero(rest);
        }
      }
      if (satisfied || open_count > 1) continue;
      used_[static_cast<std::size_t>(e.clause)] = 1;
      if (open_count == 0) {
        ok = false;
      } else {
        queue_.push_back({open, static_cast<std::uint8_t>(3 - colour), e.clause});
      }
    }
    return ok;
  }

  void unassign_to(std::size_t size) {
    while (trail_.size() > size) {
      const int var = trail_.back();
      trail_.pop_back();
      clear_bit(colour_[value_[static_cast<std::size_t>(var)] - 1], var);
      value_[static_cast<std::size_t>(var)] = 0;
    }
  }

  bool propagate() {
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const Forced f = queue_[head];
      const std::uint8_t current = value_[static_cast<std::size_t>(f.var)];
      if (current == f.colour) continue;
      if (current != 0 || !assign(f.var, f.colour)) {
        queue_.clear();
        return false;
      }
    }
    queue_.clear();
    return true;
  }

  bool start(int var, std::uint8_t colour) {
    if (assign(var, colour)) return propagate();
    queue_.clear();
    return false;
  }

  ArrowStatus run() {
    // Hyperedges with a single member force it before any branching.
    for (const Forced& f : units_) {
      used_[static_cast<std::size_t>(f.clause)] = 1;
      queue_.push_back(f);
    }
    if (!propagate()) return ArrowStatus::Ramsey;
    std::vector<Decision> stack;
    std::size_t next = 0;
    for (;;) {
      while (next < branch_.size() && value_[static_cast<std::size_t>(branch_[next])] != 0) ++next;
      if (next == branch_.size()) return ArrowStatus::NotRamsey;
      if (stats_.propagations > budget_) return ArrowStatus::BudgetExceeded;
      ++stats_.nodes;
      const int var = branch_[next];
      stack.push_back({var, trail_.size(), false, next});
      bool ok = start(var, 2);
      while (!ok) {
        while (!stack.empty() && stack.back().flipped) stack.pop_back();
        if (stack.empty()) return ArrowStatus::Ramsey;
        if (stats_.propagations > budget_) return ArrowStatus::BudgetExceeded;
        Decision& top = stack.back();
        unassign_to(top.trail);
        top.flipped = true;
        ok = start(top.var, 1);
        next = top.pos;
      }
    }
  }

  const std::vector<int>& ids_;
  std::vector<int> branch_;  // variables in branching order
  std::uint64_t budget_;
  std::vector<std::uint8_t> value_;
  Mask colour_[2]{};
  std::vector<std::vector<Entry>> occurs_[2];  // by kind
  std::vector<Forced> units_;
  std::vector<std::uint8_t> used_;
  std::vector<int> trail_;
  std::vector<Forced> queue_;
  SearchStats stats_;
};

// Branching order: ascending id, or for the minimiser's probes the
// hypervertices of the previous refutation core first, then by descending
// occurrence count. Only speed depends on the order.
SearchRun search(const std::vector<Hyperedge>& edges, std::uint64_t budget, const std::vector<int>* preferred = nullptr) {
  std::vector<int> ids;
  for (const Hyperedge& e : edges) ids.insert(ids.end(), e.edges.begin(), e.edges.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<int> branch(ids.size());
  for (std::size_t v = 0; v < branch.size(); ++v) branch[v] = static_cast<int>(v);
  if (preferred) {
    std::vector<int> occurrences(ids.size(), 0);
    for (const Hyperedge& e : edges) {
      for (int id : e.edges) ++occurrences[static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin())];
    }
    const auto rank = [&](int v) {
      const bool in_core = std::binary_search(preferred->begin(), preferred->end(), ids[static_cast<std::size_t>(v)]);
      return std::make_pair(in_core ? 0 : 1, -occurrences[static_cast<std::size_t>(v)]);
    };
    std::stable_sort(branch.begin(), branch.end(), [&](int a, int b) { return rank(a) < rank(b); });
  }
  const std::size_t words = (ids.size() + 63) / 64;
  if (words <= 1) return ArrowSolver<1>(edges, ids, std::move(branch), budget).solve();
  if (words <= 2) return ArrowSolver<2>(edges, ids, std::move(branch), budget).solve();
  if (words <= 4) return ArrowSolver<4>(edges, ids, std::move(branch), budget).solve();
  if (words <= 8) return ArrowSolver<8>(edges, ids, std::move(branch), budget).solve();
  if (words <= 16) return ArrowSolver<16>(edges, ids, std::move(branch), budget).solve();
  return ArrowSolver<32>(edges, ids, std::move(branch), budget).solve();
}

}  // namespace

ArrowDecision arrow_hyper(const Hypergraph& h, const SolverOptions& options) {
  return search(h.hyperedges(), options.budget).decision;
}

ArrowDecision arrow_graph(const Graph& g, const PairParams& pp, const SolverOptions& options) {
  const Hypergraph h = build_hypergraph(g, pp);
  ArrowDecision d = arrow_hyper(h, options);
  if (d.witness) {
    ColoringWitness full;
    for (const Edge& e : g.edges()) {
      const int id = edge_id(e);
      const int c = d.witness->color_of(id);
      full.colors.emplace_back(id, c == 0 ? 1 : c);
    }
    std::sort(full.colors.begin(), full.colors.end());
    d.witness = std::move(full);
  }
  return d;
}

bool witness_is_valid(const Hypergraph& h, const ColoringWitness& witness) {
  for (int id : h.hypervertices()) {
    const int c = witness.color_of(id);
    if (c != 1 && c != 2) return false;
  }
  for (const Hyperedge& e : h.hyperedges()) {
    const int own = static_cast<int>(e.kind);
    const bool mono = std::all_of(e.edges.begin(), e.edges.end(), [&](int id) { return witness.color_of(id) == own; });
    if (mono) return false;
  }
  return true;
}

namespace {

bool valid_for(const std::vector<Hyperedge>& edges, const ColoringWitness& witness) {
  return std::none_of(edges.begin(), edges.end(), [&](const Hyperedge& e) {
    const int own = static_cast<int>(e.kind);
    return std::all_of(e.edges.begin(), e.edges.end(), [&](int id) { return witness.color_of(id) == own; });
  });
}

std::vector<Hyperedge> without(const std::vector<Hyperedge>& edges, const Hyperedge& e) {
  std::vector<Hyperedge> out;
  out.reserve(edges.size());
  for (const Hyperedge& f : edges) {
    if (f != e) out.push_back(f);
  }
  return out;
}

std::vector<Hyperedge> without_vertex(const std::vector<Hyperedge>& edges, int id) {
  std::vector<Hyperedge> out;
  out.reserve(edges.size());
  for (const Hyperedge& f : edges) {
    if (!f.contains(id)) out.push_back(f);
  }
  return out;
}

// Answers "is H minus one hyperedge (or one hypervertex) still Ramsey?".
// Witnesses found by the search are cached in the canonical frame of the
// probe (H together with the deleted piece), so a probe isomorphic to an
// earlier non-Ramsey one is settled by carrying the colouring across; a
// carried colouring is re-validated before use. Ramsey answers always come
// from the search and leave the hyperedges it used in `core`.
class DeletionProber {
 public:
  explicit DeletionProber(const SolverOptions& options) : options_(options) {}

  // Probe for deleting hypervertex `id`.
  bool ramsey(const Hypergraph& current, int id, std::vector<Hyperedge>& core) {
    const int removed[] = {id};
    return probe(current, without_vertex(current.hyperedges(), id), removed, 2, core);
  }

  // Probe for deleting hyperedge `e`. The kind goes into the tag: for r = ell
  // a clique and a cycle can share their edge set.
  bool ramsey(const Hypergraph& current, const Hyperedge& e, std::vector<Hyperedge>& core) {
    return probe(current, without(current.hyperedges(), e), e.edges, e.kind == HyperedgeKind::Clique ? 1 : 3, core);
  }

  bool ramsey(const std::vector<Hyperedge>& edges, std::vector<Hyperedge>& core) {
    SearchRun run = search(edges, options_.budget, &preferred_);
    const ArrowDecision& d = run.decision;
    if (!d.decided()) throw BudgetExceeded("arrow search exceeded its budget of " + std::to_string(options_.budget));
    if (!d.is_ramsey()) return false;
    core.clear();
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (run.used[i]) core.push_back(edges[i]);
    }
    remember(core);
    return true;
  }

 private:
  bool probe(const Hypergraph& current, const std::vector<Hyperedge>& candidate, std::span<const int> removed, std::uint64_t tag,
             std::vector<Hyperedge>& core) {
    const CanonicalLabelling lab = hypergraph_canonical_labelling(current, removed, tag);
    const std::string key = code_to_bytes(lab.code);
    const auto hit = cache_.find(key);
    if (hit != cache_.end()) {
      ColoringWitness carried;
      for (int id : current.hypervertices()) {
        const Edge e = edge_from_id(id);
        carried.colors.emplace_back(id, hit->second.color_of(edge_id(make_edge(lab.position[e.u], lab.position[e.v]))));
      }
      if (valid_for(candidate, carried)) return false;
    }
    SearchRun run = search(candidate, options_.budget, &preferred_);
    const ArrowDecision& d = run.decision;
    if (!d.decided()) throw BudgetExceeded("arrow search exceeded its budget of " + std::to_string(options_.budget));
    if (!d.is_ramsey()) {
      // Hypervertices the candidate lost are free; colour them 1.
      ColoringWitness canonical;
      for (int id : current.hypervertices()) {
        const Edge e = edge_from_id(id);
        const int c = d.witness->color_of(id);
        canonical.colors.emplace_back(edge_id(make_edge(lab.position[e.u], lab.position[e.v])), c == 0 ? 1 : c);
      }
      std::sort(canonical.colors.begin(), canonical.colors.end());
      cache_.emplace(key, std::move(canonical));
      return false;
    }
    core.clear();
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      if (run.used[i]) core.push_back(candidate[i]);
    }
    remember(core);
    return true;
  }

  void remember(const std::vector<Hyperedge>& core) {
    preferred_.clear();
    for (const Hyperedge& e : core) preferred_.insert(preferred_.end(), e.edges.begin(), e.edges.end());
    std::sort(preferred_.begin(), preferred_.end());
    preferred_.erase(std::unique(preferred_.begin(), preferred_.end()), preferred_.end());
  }

  SolverOptions options_;
  std::map<std::string, ColoringWitness> cache_;
  std::vector<int> preferred_;  // hypervertices of the last refutation core
};

bool in_core(const std::vector<Hyperedge>& core, const Hyperedge& e) { return std::binary_search(core.begin(), core.end(), e); }

}  // namespace

// A deletion that keeps the last refutation core intact is Ramsey by
// monotonicity, so only deletions touching the core are searched. The result
// is the same as testing every deletion.
namespace {

std::optional<Hypergraph> minimize_if_ramsey(const Hypergraph& h, const MinimizeOptions& options) {
  DeletionProber prober(options.solver);
  std::vector<Hyperedge> core;
  if (!prober.ramsey(h.hyperedges(), core)) return std::nullopt;
  Hypergraph current = h;
  std::vector<Hyperedge> order(h.hyperedges().rbegin(), h.hyperedges().rend());
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  for (const Hyperedge& e : order) {
    std::vector<Hyperedge> next_core;
    if (!in_core(core, e)) {
      current = Hypergraph(h.host(), without(current.hyperedges(), e));
    } else if (prober.ramsey(current, e, next_core)) {
      current = Hypergraph(h.host(), without(current.hyperedges(), e));
      core = std::move(next_core);
    }
  }
  const std::vector<int> vertices = current.hypervertices();
  for (int id : vertices) {
    if (!std::binary_search(current.hypervertices().begin(), current.hypervertices().end(), id)) continue;
    const bool core_kept = std::none_of(core.begin(), core.end(), [&](const Hyperedge& f) { return f.contains(id); });
    std::vector<Hyperedge> next_core;
    if (core_kept) {
      current = Hypergraph(h.host(), without_vertex(current.hyperedges(), id));
    } else if (prober.ramsey(current, id, next_core)) {
      current = Hypergraph(h.host(), without_vertex(current.hyperedges(), id));
      core = std::move(next_core);
    }
  }
  return current;
}

}  // namespace

Hypergraph minimize(const Hypergraph& h, const MinimizeOptions& options) {
  auto out = minimize_if_ramsey(h, options);
  if (!out) throw PreconditionError("minimize needs a Ramsey hypergraph");
  return std::move(*out);
}

MinimalityReport check_ramsey_minimal(const Hypergraph& h, const SolverOptions& options) {
  MinimalityReport report;
  DeletionProber prober(options);
  std::vector<Hyperedge> core;
  report.ramsey = prober.ramsey(h.hyperedges(), core);
  if (!report.ramsey) {
    report.failure = "hypergraph is not Ramsey";
    return report;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (prober.ramsey(h, h.hyperedges()[i], core)) {
      report.failure = "still Ramsey after removing hyperedge #" + std::to_string(i);
      return report;
    }
  }
  for (int id : h.hypervertices()) {
    if (prober.ramsey(h, id, core)) {
      const Edge e = edge_from_id(id);
      report.failure = "still Ramsey after removing hypervertex {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
      return report;
    }
  }
  report.minimal = true;
  return report;
}

std::string StarCriticalCertificate::describe() const {
  if (critical) return "critical";
  if (uncovered_hypervertex) {
    const Edge e = edge_from_id(*uncovered_hypervertex);
    return "edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "} lies in no hyperedge of the required type";
  }
  if (unshielded) {
    const Edge e = edge_from_id(unshielded->second);
    return std::string(to_string(unshielded->first.kind)) + " hyperedge has no private partner at edge {" +
           std::to_string(e.u) + "," + std::to_string(e.v) + "}";
  }
  return "not critical";
}

namespace {

std::optional<std::pair<Hyperedge, int>> find_unshielded(const Hypergraph& h, HyperedgeKind from) {
  for (const Hyperedge& f : h.hyperedges()) {
    if (f.kind != from) continue;
    for (int e : f.edges) {
      const bool shielded = std::any_of(h.hyperedges().begin(), h.hyperedges().end(), [&](const Hyperedge& g) {
        return g.kind != from && meets_exactly_in(f, g, e);
      });
      if (!shielded) return std::make_pair(f, e);
    }
  }
  return std::nullopt;
}

}  // namespace

StarCriticalCertificate is_star_critical(const Hypergraph& h) {
  StarCriticalCertificate cert;
  for (int id : h.hypervertices()) {
    const bool covered = std::any_of(h.hyperedges().begin(), h.hyperedges().end(), [&](const Hyperedge& f) {
      return f.kind == HyperedgeKind::Cycle && f.contains(id);
    });
    if (!covered) {
      cert.uncovered_hypervertex = id;
      return cert;
    }
  }
  cert.unshielded = find_unshielded(h, HyperedgeKind::Cycle);
  cert.critical = !cert.unshielded;
  return cert;
}

StarCriticalCertificate ramsey_crit_full_check(const Hypergraph& h) {
  StarCriticalCertificate cert;
  cert.unshielded = find_unshielded(h, HyperedgeKind::Clique);
  if (!cert.unshielded) cert.unshielded = find_unshielded(h, HyperedgeKind::Cycle);
  cert.critical = !cert.unshielded;
  return cert;
}

std::optional<Hypergraph> find_crit(const Graph& g, const PairParams& pp, const MinimizeOptions& options) {
  const CanonicalLabelling lab = canonical_labelling(g);
  const Graph canon = g.relabel(lab.position);
  const Hypergraph full = build_hypergraph(canon, pp);
  auto crit = minimize_if_ramsey(full, options);
  if (!crit) return std::nullopt;
  return crit->relabel(lab.order);
}

}  // namespace krcl
