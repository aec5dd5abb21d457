#include "krcl/hypertree.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "krcl/error.hpp"
#include "krcl/solver.hpp"

namespace krcl {

int EdgeLabelling::label_of(int edge_id) const {
  if (edge_id < 0 || static_cast<std::size_t>(edge_id) >= label_.size()) return 0;
  return label_[static_cast<std::size_t>(edge_id)];
}

void EdgeLabelling::push(int edge_id) {
  if (edge_id < 0 || edge_id >= kMaxEdgeIds) throw ArgumentError("edge id out of range: " + std::to_string(edge_id));
  if (labelled(edge_id)) throw ArgumentError("edge id labelled twice: " + std::to_string(edge_id));
  if (static_cast<std::size_t>(edge_id) >= label_.size()) label_.resize(static_cast<std::size_t>(edge_id) + 1, 0);
  by_label_.push_back(edge_id);
  label_[static_cast<std::size_t>(edge_id)] = static_cast<int>(by_label_.size());
}

namespace {

int map_edge(int id, std::span<const int> perm) {
  const Edge e = edge_from_id(id);
  return edge_id(make_edge(perm[e.u], perm[e.v]));
}

}  // namespace

EdgeLabelling EdgeLabelling::relabel(std::span<const int> perm) const {
  EdgeLabelling out;
  for (int id : by_label_) out.push(map_edge(id, perm));
  return out;
}

EdgeLabelling initial_labelling(const Hyperedge& clique) {
  std::vector<Edge> edges = clique.edge_list();
  std::sort(edges.begin(), edges.end());
  EdgeLabelling sigma;
  for (const Edge& e : edges) sigma.push(edge_id(e));
  return sigma;
}

EdgeLabelling extend_labelling(const EdgeLabelling& sigma_prev, const Subgraph& g_prev, const Subgraph& g_new) {
  if (g_prev.host_order() != g_new.host_order()) throw ArgumentError("labelling extension across different hosts");
  const std::vector<Edge> old_edges = g_prev.edges();
  if (sigma_prev.size() != old_edges.size()) throw ArgumentError("labelling does not cover the previous graph exactly");
  for (const Edge& e : old_edges) {
    if (!sigma_prev.labelled(edge_id(e))) throw ArgumentError("previous edge without a label");
    if (!g_new.has_edge(e)) throw ArgumentError("previous graph is not contained in the new one");
  }
  if ((g_prev.vertices() & ~g_new.vertices()) != 0) throw ArgumentError("previous graph is not contained in the new one");

  std::vector<Edge> fresh;
  for (const Edge& e : g_new.edges()) {
    if (!g_prev.has_edge(e)) fresh.push_back(e);
  }
  EdgeLabelling sigma = sigma_prev;
  if (fresh.empty()) return sigma;

  const Subgraph attachment = Subgraph::spanned_by(g_new.host_order(), fresh);
  // Anchors rank by the sorted labels of their old edges; in a connected
  // previous graph with a vertex of degree two or more these lists differ.
  std::vector<std::pair<std::vector<int>, int>> ranked;
  for (int v = 0; v < g_new.host_order(); ++v) {
    if (!attachment.has_vertex(v) || !g_prev.has_vertex(v)) continue;
    std::vector<int> labels;
    VertexSet nb = g_prev.edge_graph().neighbours(v);
    while (nb) {
      const int w = std::countr_zero(nb);
      nb &= nb - 1;
      labels.push_back(sigma_prev.label_of(edge_id(make_edge(v, w))));
    }
    std::sort(labels.begin(), labels.end());
    ranked.emplace_back(std::move(labels), v);
  }
  std::sort(ranked.begin(), ranked.end());
  std::vector<int> anchors;
  for (const auto& [labels, v] : ranked) anchors.push_back(v);

  const CanonicalLabelling lab = anchored_canonical_labelling(attachment, anchors);
  std::vector<int> index(static_cast<std::size_t>(g_new.host_order()), -1);
  int k = 0;
  for (int v = 0; v < g_new.host_order(); ++v) {
    if (attachment.has_vertex(v)) index[static_cast<std::size_t>(v)] = k++;
  }
  std::vector<std::pair<std::pair<int, int>, int>> keyed;
  for (const Edge& e : fresh) {
    int a = lab.position[static_cast<std::size_t>(index[static_cast<std::size_t>(e.u)])];
    int b = lab.position[static_cast<std::size_t>(index[static_cast<std::size_t>(e.v)])];
    if (a > b) std::swap(a, b);
    keyed.push_back({{a, b}, edge_id(e)});
  }
  std::sort(keyed.begin(), keyed.end());
  for (const auto& [key, id] : keyed) sigma.push(id);
  return sigma;
}

namespace {

constexpr int kUnlabelledOffset = 1 << 24;

std::vector<int> order_key(const Hyperedge& e, const EdgeLabelling& sigma) {
  std::vector<int> key;
  key.reserve(e.edges.size() + 1);
  for (int id : e.edges) {
    const int label = sigma.label_of(id);
    key.push_back(label != 0 ? label : kUnlabelledOffset + id);
  }
  std::sort(key.begin(), key.end());
  key.insert(key.begin(), static_cast<int>(e.kind));
  return key;
}

}  // namespace

bool hyperedge_less(const Hyperedge& a, const Hyperedge& b, const EdgeLabelling& sigma) {
  return order_key(a, sigma) < order_key(b, sigma);
}

const char* to_string(RestrictionMode mode) noexcept {
  return mode == RestrictionMode::SingleInput ? "single" : "batch";
}

Hypergraph restricted_hypergraph(const Hypergraph& h_prev, std::span<const Hypergraph> inputs, RestrictionMode mode) {
  if (inputs.empty()) throw ArgumentError("restriction needs at least one input hypergraph");
  if (mode == RestrictionMode::SingleInput && inputs.size() != 1) {
    throw ArgumentError("single-input restriction takes exactly one hypergraph");
  }
  const std::vector<int>& inside = h_prev.hypervertices();
  std::vector<Hyperedge> kept;
  for (const Hypergraph& h : inputs) {
    if (!h.contains_all(h_prev)) throw PreconditionError("restriction input does not contain the current hypergraph");
    for (const Hyperedge& e : h.hyperedges()) {
      if (edges_within(e, inside)) kept.push_back(e);
    }
  }
  return Hypergraph(h_prev.host(), std::move(kept));
}

std::vector<Hyperedge> Flower::hyperedges() const {
  std::vector<Hyperedge> out{cycle};
  for (const auto& [edge, petal] : petals) out.push_back(petal);
  return out;
}

namespace {

template <typename Pred>
std::optional<Hyperedge> smallest(const Hypergraph& h, const EdgeLabelling& sigma, Pred pred) {
  std::optional<Hyperedge> best;
  std::vector<int> best_key;
  for (const Hyperedge& e : h.hyperedges()) {
    if (!pred(e)) continue;
    std::vector<int> key = order_key(e, sigma);
    if (!best || key < best_key) {
      best = e;
      best_key = std::move(key);
    }
  }
  return best;
}

std::string edge_text(int id) {
  const Edge e = edge_from_id(id);
  return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}";
}

}  // namespace

Flower flower_run(const Hypergraph& h_prev, const Hypergraph& h, const Hypergraph& restriction, const EdgeLabelling& sigma,
                  const PairParams& pp) {
  const std::vector<int>& inside = h_prev.hypervertices();
  const auto in_prev = [&](int id) { return std::binary_search(inside.begin(), inside.end(), id); };
  std::set<int> covered;
  for (const Hyperedge& c : restriction.hyperedges()) {
    if (c.kind == HyperedgeKind::Cycle) covered.insert(c.edges.begin(), c.edges.end());
  }
  Flower flower;
  for (int id : sigma.edges_by_label()) {
    if (in_prev(id) && !covered.count(id)) {
      flower.seed = id;
      break;
    }
  }
  if (flower.seed < 0) throw LemmaViolation("existenceofe0", "every edge of the current graph lies in a cycle of the restriction");

  const auto cycle = smallest(h, sigma, [&](const Hyperedge& c) {
    return c.kind == HyperedgeKind::Cycle && c.contains(flower.seed) && !edges_within(c, inside);
  });
  if (!cycle) throw LemmaViolation("existenceofe0", "no cycle hyperedge leaves the current graph through seed " + edge_text(flower.seed));
  flower.cycle = *cycle;

  const VertexSet prev_vertices = underlying_graph(h_prev).vertices();
  for (int e : flower.cycle.edges) {
    if (in_prev(e)) continue;
    const auto petal = smallest(h, sigma, [&](const Hyperedge& p) {
      return p.kind == HyperedgeKind::Clique && meets_exactly_in(flower.cycle, p, e);
    });
    if (!petal) throw LemmaViolation("existenceofe0", "no clique hyperedge meets the cycle exactly in " + edge_text(e));
    if (popcount(petal->vertices() & prev_vertices) > 1) {
      throw LemmaViolation("preludeflowerCorrectness", "F3: petal at " + edge_text(e) + " meets the current graph in two vertices");
    }
    flower.petals.emplace_back(e, *petal);
  }
  if (edges_within(flower.cycle, inside)) throw LemmaViolation("preludeflowerCorrectness", "F1: cycle inside the current graph");
  if (static_cast<int>(flower.petals.size()) >= pp.ell()) {
    throw LemmaViolation("preludeflowerCorrectness", "flower has at least ell petals");
  }
  return flower;
}

const char* to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::Init: return "Init";
    case StepKind::CliqueAttach: return "CliqueAttach";
    case StepKind::FlowerAttach: return "FlowerAttach";
  }
  return "unknown";
}

const char* to_string(StopReason reason) noexcept {
  return reason == StopReason::LambdaReached ? "LambdaReached" : "StepBudget";
}

const char* to_string(FingerprintTag tag) noexcept {
  switch (tag) {
    case FingerprintTag::J1: return "J1";
    case FingerprintTag::J2: return "J2";
    case FingerprintTag::Unclassified: return "Unclassified";
  }
  return "unknown";
}

int ceil_log2(int n) {
  if (n < 1) throw ArgumentError("log2 of a non-positive count");
  return std::bit_width(static_cast<unsigned>(n - 1));
}

namespace {

// 2^e >= n, i.e. e >= log2 n, without floating point.
bool at_least_log2(int e, int n) { return e >= ceil_log2(n); }

}  // namespace

FingerprintClass classify_fingerprint(const Subgraph& gf, const PairParams& pp, int n) {
  FingerprintClass c;
  c.epsilon = pp.epsilon_or_throw();
  c.m = pp.lambda_clique();
  c.edge_count = gf.edge_count();
  c.lambda = lambda(gf, pp);
  if (c.lambda <= -c.epsilon) {
    c.tag = FingerprintTag::J1;
  } else if (c.lambda <= c.m && at_least_log2(c.edge_count, n)) {
    c.tag = FingerprintTag::J2;
  }
  return c;
}

FingerprintClass classify_fingerprint(const Graph& gf, const PairParams& pp, int n) {
  return classify_fingerprint(Subgraph::whole(gf), pp, n);
}

HyperTreeTrace HyperTreeTrace::relabel(std::span<const int> perm) const {
  HyperTreeTrace out = *this;
  for (TraceStep& s : out.steps) {
    s.hypergraph = s.hypergraph.relabel(perm);
    s.sigma = s.sigma.relabel(perm);
    if (s.clique) s.clique = s.clique->relabel(perm);
    if (s.flower) {
      Flower f;
      f.seed = map_edge(s.flower->seed, perm);
      f.cycle = s.flower->cycle.relabel(perm);
      for (const auto& [e, p] : s.flower->petals) f.petals.emplace_back(map_edge(e, perm), p.relabel(perm));
      std::sort(f.petals.begin(), f.petals.end());
      s.flower = std::move(f);
    }
  }
  out.fingerprint = fingerprint.relabel(perm);
  return out;
}

namespace {

bool qualifying_clique(const Hyperedge& e, VertexSet prev_vertices, const std::vector<int>& prev_edges) {
  return e.kind == HyperedgeKind::Clique && popcount(e.vertices() & prev_vertices) >= 2 && !edges_within(e, prev_edges);
}

bool enters_flower(const Hypergraph& h, VertexSet prev_vertices, const std::vector<int>& prev_edges) {
  return std::none_of(h.hyperedges().begin(), h.hyperedges().end(),
                      [&](const Hyperedge& e) { return qualifying_clique(e, prev_vertices, prev_edges); });
}

HyperTreeTrace run_canonical(const Hypergraph& h, const PairParams& pp, const HyperTreeOptions& options,
                             const std::vector<Hypergraph>& peers, int n) {
  const Rational eps = pp.epsilon_or_throw();
  HyperTreeTrace trace;
  trace.n = n;
  trace.step_budget = ceil_log2(n);

  const EdgeLabelling none;
  const auto e0 = smallest(h, none, [](const Hyperedge& e) { return e.kind == HyperedgeKind::Clique; });
  if (!e0) throw PreconditionError("hypergraph has no clique hyperedge");
  {
    TraceStep init;
    init.index = 0;
    init.kind = StepKind::Init;
    init.hypergraph = Hypergraph(h.host(), {*e0});
    init.sigma = initial_labelling(*e0);
    init.lambda = lambda(underlying_graph(init.hypergraph), pp);
    init.new_vertices = pp.r();
    init.clique = *e0;
    trace.steps.push_back(std::move(init));
  }

  while (trace.steps.back().lambda > -eps && trace.stopping_time() < trace.step_budget) {
    const TraceStep& prev = trace.steps.back();
    const Subgraph g_prev = underlying_graph(prev.hypergraph);
    const std::vector<int>& prev_edges = prev.hypergraph.hypervertices();
    TraceStep step;
    step.index = prev.index + 1;
    step.degenerate_steps = prev.degenerate_steps;

    const auto clique = smallest(h, prev.sigma, [&](const Hyperedge& e) {
      return qualifying_clique(e, g_prev.vertices(), prev_edges);
    });
    if (clique) {
      step.kind = StepKind::CliqueAttach;
      step.clique = *clique;
      step.hypergraph = prev.hypergraph.with(std::span<const Hyperedge>(&*clique, 1));
      step.degenerate = true;
    } else {
      std::vector<Hypergraph> inputs{h};
      if (options.mode == RestrictionMode::Batch) {
        for (const Hypergraph& p : peers) {
          if (p.contains_all(prev.hypergraph) && enters_flower(p, g_prev.vertices(), prev_edges)) inputs.push_back(p);
        }
      }
      const Hypergraph restriction = restricted_hypergraph(prev.hypergraph, inputs, options.mode);
      Flower flower = flower_run(prev.hypergraph, h, restriction, prev.sigma, pp);
      const std::vector<Hyperedge> added = flower.hyperedges();
      step.kind = StepKind::FlowerAttach;
      step.hypergraph = prev.hypergraph.with(added);
      step.flower = std::move(flower);
    }
    const Subgraph g_new = underlying_graph(step.hypergraph);
    step.new_vertices = popcount(g_new.vertices() & ~g_prev.vertices());
    if (step.kind == StepKind::FlowerAttach) step.degenerate = step.new_vertices != pp.perfect_flower_vertices();
    if (step.degenerate) step.degenerate_steps.push_back(step.index);
    step.sigma = extend_labelling(prev.sigma, g_prev, g_new);
    step.lambda = lambda(g_new, pp);
    trace.steps.push_back(std::move(step));
  }

  trace.stop_reason = trace.steps.back().lambda <= -eps ? StopReason::LambdaReached : StopReason::StepBudget;
  trace.fingerprint = underlying_graph(trace.steps.back().hypergraph);
  trace.fingerprint_class = classify_fingerprint(trace.fingerprint, pp, n);
  if (trace.fingerprint_class.tag == FingerprintTag::Unclassified) {
    throw LemmaViolation("Jsets", "fingerprint is in neither J1 nor J2");
  }
  return trace;
}

}  // namespace

HyperTreeTrace hypertree_run(const Hypergraph& h, const PairParams& pp, const HyperTreeOptions& options) {
  if (!pp.tree_regime()) throw DomainError("the tree procedure needs r >= 4 and ell >= 4");
  const int n = options.n.value_or(h.host().order());
  if (n < 2) throw PreconditionError("the step budget needs n >= 2");
  const StarCriticalCertificate cert = is_star_critical(h);
  if (!cert.critical) throw PreconditionError("input is not star-critical: " + cert.describe());
  if (options.mode == RestrictionMode::SingleInput && !options.peers.empty()) {
    throw ArgumentError("peer hypergraphs are only used in batch mode");
  }
  for (const Hypergraph& p : options.peers) {
    if (p.host().order() != h.host().order()) throw ArgumentError("peer hypergraph lives on a different host");
  }
  const CanonicalLabelling lab = hypergraph_canonical_labelling(h);
  std::vector<Hypergraph> peers;
  for (const Hypergraph& p : options.peers) peers.push_back(p.relabel(lab.position));
  return run_canonical(h.relabel(lab.position), pp, options, peers, n).relabel(lab.order);
}

namespace {

Subgraph spanned(int host_order, const Hyperedge& e) {
  const std::vector<Edge> edges = e.edge_list();
  return Subgraph::spanned_by(host_order, edges);
}

void fail(StepAudit& a, std::string what) {
  a.ok = false;
  a.failures.push_back(std::move(what));
}

bool is_k2(const Subgraph& j) { return j.vertex_count() == 2 && j.edge_count() == 1; }

Subgraph drop_vertices(const Subgraph& j, VertexSet drop) {
  Subgraph out(j.host_order());
  for (int v = 0; v < j.host_order(); ++v) {
    if (j.has_vertex(v) && !(drop & vertex_bit(v))) out.add_vertex(v);
  }
  for (const Edge& e : j.edges()) {
    if (!(drop & (vertex_bit(e.u) | vertex_bit(e.v)))) out.add_edge(e);
  }
  return out;
}

}  // namespace

StepAudit audit_clique_step(const TraceStep& prev, const TraceStep& step, const PairParams& pp) {
  StepAudit a;
  if (step.kind != StepKind::CliqueAttach || !step.clique) throw ArgumentError("not a clique step");
  const Subgraph g_prev = underlying_graph(prev.hypergraph);
  const Subgraph g_new = underlying_graph(step.hypergraph);
  const Subgraph k = spanned(g_prev.host_order(), *step.clique);
  const Subgraph j = subgraph_intersection(g_prev, k);
  a.lambda_change = lambda(g_new, pp) - lambda(g_prev, pp);
  if (a.lambda_change != step.lambda - prev.lambda) fail(a, "recorded lambda values disagree with the graphs");
  if (j.vertex_count() < 2 || j == k) {
    fail(a, "(eq:lambdaDiff): clique meets the current graph in fewer than two vertices or lies inside it");
    return a;
  }
  const Rational b = beta(j, pp);
  if (a.lambda_change != b) fail(a, "(eq:lambdaDiff): lambda change differs from beta of the intersection");
  if (!(b < Rational(0))) fail(a, "(claim:beta a): beta of the intersection is not negative");
  return a;
}

StepAudit audit_flower_step(const TraceStep& prev, const TraceStep& step, const PairParams& pp) {
  StepAudit a;
  if (step.kind != StepKind::FlowerAttach || !step.flower) throw ArgumentError("not a flower step");
  const Flower& f = *step.flower;
  const int ell = pp.ell();
  const Rational m2 = pp.m2_pair();
  const Subgraph g_prev = underlying_graph(prev.hypergraph);
  const Subgraph g_new = underlying_graph(step.hypergraph);
  const int host = g_prev.host_order();
  const Subgraph c = spanned(host, f.cycle);
  const Rational lambda_prev = lambda(g_prev, pp);
  a.lambda_change = lambda(g_new, pp) - lambda_prev;
  if (a.lambda_change != step.lambda - prev.lambda) fail(a, "recorded lambda values disagree with the graphs");

  // Cycle increment.
  const Subgraph j0 = subgraph_intersection(g_prev, c);
  Subgraph level = subgraph_union(g_prev, c);
  a.cycle_increment = lambda(level, pp) - lambda_prev;
  const Rational closed = Rational(ell - j0.vertex_count()) - Rational(ell - j0.edge_count()) / m2;
  std::vector<int> a0_ids;
  for (int id : f.cycle.edges) {
    if (!g_prev.has_edge(edge_from_id(id))) a0_ids.push_back(id);
  }
  a.a0 = static_cast<int>(a0_ids.size());
  const Rational beta_k2 = beta(2, 1, pp);
  const Rational cycle_bound = -beta_k2 * Rational(a.a0);
  if (a.cycle_increment != closed) fail(a, "(dlambdaC): cycle increment differs from its closed form");
  if (a.cycle_increment > cycle_bound) fail(a, "(dlambdaC): cycle increment above its bound");
  if ((a.cycle_increment == cycle_bound) != is_k2(j0)) fail(a, "(dlambdaC): equality case does not match J0 = K2");
  if (j0.edge_count() < 1 || a.a0 < 1) {
    fail(a, "(F3): cycle must share an edge with the current graph and leave it");
    return a;
  }
  if (a0_ids.size() != f.petals.size()) fail(a, "flower petals do not match the new cycle edges");

  // Cyclic order u_0..u_{ell-1} with u_0 u_{ell-1} the old cycle edge of least label.
  int anchor_edge = -1;
  for (int id : f.cycle.edges) {
    if (g_prev.has_edge(edge_from_id(id)) &&
        (anchor_edge < 0 || prev.sigma.label_of(id) < prev.sigma.label_of(anchor_edge))) {
      anchor_edge = id;
    }
  }
  const Edge first = edge_from_id(anchor_edge);
  std::vector<int> u{first.u};
  int before = first.v;
  while (static_cast<int>(u.size()) < ell) {
    const int here = u.back();
    VertexSet nb = c.edge_graph().neighbours(here) & ~vertex_bit(before);
    if (popcount(nb) != 1) {
      fail(a, "cycle hyperedge is not a simple cycle");
      return a;
    }
    before = here;
    u.push_back(std::countr_zero(nb));
  }
  if (u.back() != first.v) {
    fail(a, "cycle hyperedge does not close");
    return a;
  }
  const auto cycle_edge = [&](int m) { return edge_id(make_edge(u[static_cast<std::size_t>(m)], u[static_cast<std::size_t>(m + 1)])); };
  std::set<int> open;  // indices m with u_m u_{m+1} in A_s
  for (int m = 0; m + 1 < ell; ++m) {
    if (!g_prev.has_edge(edge_from_id(cycle_edge(m)))) open.insert(m);
  }

  int t = 0;
  int isolated_total = 0;
  std::set<int> used_petals;
  while (!open.empty()) {
    ++t;
    const int ms = *open.begin();
    const int e = cycle_edge(ms);
    const auto it = std::find_if(f.petals.begin(), f.petals.end(), [&](const auto& pe) { return pe.first == e; });
    if (it == f.petals.end()) {
      fail(a, "no petal covers cycle edge " + edge_text(e));
      return a;
    }
    used_petals.insert(e);
    const Subgraph p = spanned(host, it->second);
    const Subgraph js = subgraph_intersection(level, p);
    const int tip = u[static_cast<std::size_t>(ms + 1)];
    VertexSet isolated = 0;
    for (int m : open) {
      const int w = u[static_cast<std::size_t>(m + 1)];
      if (w != tip && js.has_vertex(w)) isolated |= vertex_bit(w);
    }
    if (js.degree(tip) != 1) fail(a, "(claim:deg1): u_{m_s+1} does not have degree one in J_s");
    for (int w = 0; w < host; ++w) {
      if ((isolated & vertex_bit(w)) && js.degree(w) != 0) fail(a, "(claim:deg1): a vertex of I_s is not isolated in J_s");
    }
    const Subgraph next = subgraph_union(level, p);
    const Rational change = lambda(next, pp) - lambda(level, pp);
    const Subgraph reduced = drop_vertices(js, isolated);
    const int is = popcount(isolated);
    const Rational b = beta(js, pp);
    const Rational b_reduced = beta(reduced, pp);
    if (change != b) fail(a, "(change1petal): petal increment differs from beta(J_s)");
    if (b != b_reduced - Rational(is)) fail(a, "(change1petal): beta(J_s) differs from beta of the reduced graph minus |I_s|");
    if (b_reduced > beta_k2) fail(a, "(change1petal): beta of the reduced graph exceeds beta(K2)");
    if ((b_reduced == beta_k2) != is_k2(reduced)) fail(a, "(change1petal): equality case does not match K2");
    isolated_total += is + 1;
    level = next;
    for (auto m = open.begin(); m != open.end();) {
      if (p.has_vertex(u[static_cast<std::size_t>(*m + 1)])) {
        m = open.erase(m);
      } else {
        ++m;
      }
    }
  }
  a.petal_sequence_length = t;
  if (isolated_total != a.a0) fail(a, "sum of |I_s|+1 differs from |A_0|");

  const Rational sequence_change = lambda(level, pp) - lambda_prev;
  if (a.lambda_change > sequence_change) fail(a, "(conclusion1.0): full flower increment above the petal-sequence increment");
  if (used_petals.size() == f.petals.size() && a.lambda_change != sequence_change) {
    fail(a, "(conclusion1.0): equality fails although the sequence uses every petal");
  }
  const Rational bound2 = (beta_k2 + Rational(1)) * Rational(t - a.a0);
  const Rational bound11 = cycle_bound + Rational(t) * beta_k2 - Rational(isolated_total - t);
  if (bound11 != bound2) fail(a, "(conclusion2): rearranged bound differs");
  if (a.lambda_change > bound2) fail(a, "(conclusion2): lambda change above (beta(K2)+1)(t-|A_0|)");
  if (bound2 > Rational(0)) fail(a, "(conclusion3): bound is positive");
  if ((bound2 == Rational(0)) != (t == a.a0)) fail(a, "(conclusion3): equality case does not match t = |A_0|");

  const bool perfect = step.new_vertices == pp.perfect_flower_vertices();
  if (a.lambda_change > Rational(0)) fail(a, "(deg-lambda): flower step increased lambda");
  if ((a.lambda_change == Rational(0)) != perfect) {
    fail(a, "(deg-lambda): lambda unchanged does not coincide with (r-1)(ell-1)-1 new vertices");
  }
  if (step.degenerate == perfect) fail(a, "degenerate flag disagrees with the vertex count");
  return a;
}

namespace {

void fail(TraceAudit& a, std::string what) {
  a.ok = false;
  a.failures.push_back(std::move(what));
}

}  // namespace

TraceAudit audit_trace(const HyperTreeTrace& trace, const Hypergraph& input, const PairParams& pp) {
  TraceAudit a;
  const Rational eps = pp.epsilon_or_throw();
  if (trace.steps.empty()) {
    fail(a, "empty trace");
    return a;
  }
  const TraceStep& s0 = trace.steps.front();
  if (s0.kind != StepKind::Init || s0.hypergraph.size() != 1 || s0.hypergraph.hyperedges()[0].kind != HyperedgeKind::Clique) {
    fail(a, "(hypertreeBasics a): H_0 is not a single clique hyperedge");
  }
  if (!s0.degenerate_steps.empty()) fail(a, "D_0 is not empty");
  const int big_t = trace.stopping_time();
  if (trace.step_budget != ceil_log2(trace.n)) fail(a, "step budget differs from ceil(log2 n)");
  const std::vector<int>& dt = trace.degenerate_steps();

  for (int i = 0; i <= big_t; ++i) {
    const TraceStep& s = trace.steps[static_cast<std::size_t>(i)];
    const Subgraph g = underlying_graph(s.hypergraph);
    if (s.index != i) fail(a, "step index out of sequence at " + std::to_string(i));
    if (!input.contains_all(s.hypergraph)) fail(a, "H_" + std::to_string(i) + " is not contained in the input");
    if (s.lambda != lambda(g, pp)) fail(a, "recorded lambda of step " + std::to_string(i) + " is wrong");
    if (g.edge_count() != s.hypergraph.vertex_count()) fail(a, "e(G_i) differs from |V(H_i)| at step " + std::to_string(i));
    if (s.sigma.size() != static_cast<std::size_t>(g.edge_count())) fail(a, "labelling size differs from e(G_i) at step " + std::to_string(i));
    const bool stop_here = s.lambda <= -eps || i >= trace.step_budget;
    if (i < big_t && stop_here) fail(a, "(hypertreeBasics c): stopping condition already met at step " + std::to_string(i));
    if (i == big_t && !stop_here) fail(a, "(hypertreeBasics c): trace ends before the stopping condition");
    for (int d : s.degenerate_steps) {
      if (d < 1 || d > i) fail(a, "D_i holds an index outside 1..i at step " + std::to_string(i));
    }
    if (i == 0) continue;
    const TraceStep& p = trace.steps[static_cast<std::size_t>(i - 1)];
    if (!s.hypergraph.contains_all(p.hypergraph)) fail(a, "H_{i-1} not contained in H_i at step " + std::to_string(i));
    if (!std::includes(s.degenerate_steps.begin(), s.degenerate_steps.end(), p.degenerate_steps.begin(), p.degenerate_steps.end())) {
      fail(a, "D_{i-1} not contained in D_i at step " + std::to_string(i));
    }
    if (s.hypergraph.vertex_count() <= p.hypergraph.vertex_count()) {
      fail(a, "(hypertreeBasics b): v(H_i) does not grow at step " + std::to_string(i));
    }
    const bool in_dt = std::binary_search(dt.begin(), dt.end(), i);
    if (in_dt && !(s.lambda < p.lambda)) fail(a, "(deg-lambda 2): degenerate step " + std::to_string(i) + " does not decrease lambda");
    if (!in_dt && s.lambda != p.lambda) fail(a, "(deg-lambda 1): non-degenerate step " + std::to_string(i) + " changes lambda");
    if (in_dt) {
      const Rational drop = p.lambda - s.lambda;
      if (!a.delta_obs || drop < *a.delta_obs) a.delta_obs = drop;
    }
    StepAudit sa = s.kind == StepKind::CliqueAttach ? audit_clique_step(p, s, pp) : audit_flower_step(p, s, pp);
    for (const std::string& w : sa.failures) fail(a, "step " + std::to_string(i) + ": " + w);
    a.steps.push_back(std::move(sa));
  }
  const StopReason expected = trace.steps.back().lambda <= -eps ? StopReason::LambdaReached : StopReason::StepBudget;
  if (trace.stop_reason != expected) fail(a, "stop reason disagrees with the final lambda");
  if (!(trace.fingerprint == underlying_graph(trace.steps.back().hypergraph))) {
    fail(a, "(hypertreeBasics d): fingerprint is not the underlying graph of H_T");
  }
  if (trace.steps.back().lambda > pp.lambda_clique()) fail(a, "lambda(G_T) exceeds lambda(K_r)");
  if (a.delta_obs) {
    if (!(*a.delta_obs > Rational(0))) fail(a, "observed delta is not positive");
    const Rational cap = Rational(1) + (pp.lambda_clique() + eps) / *a.delta_obs;
    if (Rational(static_cast<std::int64_t>(dt.size())) > cap) fail(a, "|D_T| exceeds 1 + (lambda(K_r) + eps)/delta_obs");
  }
  const FingerprintClass c = classify_fingerprint(trace.fingerprint, pp, trace.n);
  if (c.tag == FingerprintTag::Unclassified) fail(a, "fingerprint is unclassified");
  if (c.tag != trace.fingerprint_class.tag) fail(a, "recorded fingerprint class disagrees with the definition");
  return a;
}

}  // namespace krcl
