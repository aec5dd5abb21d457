#include "krcl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <thread>

#include "krcl/canonical.hpp"
#include "krcl/error.hpp"
#include "krcl/io.hpp"

namespace krcl {

namespace {

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double stream_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t index) noexcept {
  std::uint64_t x = mix64(seed);
  x = mix64(x ^ mix64(trial ^ 0x5851f42d4c957f2dULL));
  x = mix64(x ^ mix64(index ^ 0x14057b7ef767814fULL));
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

Graph sample_gnp(int n, double p, std::uint64_t seed, std::uint64_t trial) {
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("edge probability outside [0,1]");
  Graph g(n);
  for (int v = 1; v < n; ++v) {
    for (int u = 0; u < v; ++u) {
      if (stream_uniform(seed, trial, static_cast<std::uint64_t>(edge_id(Edge{u, v}))) < p) g.add_edge(u, v);
    }
  }
  return g;
}

double grid_probability(const McConfig& cfg, double value) {
  double p = value;
  if (cfg.grid_kind == GridKind::Prefactor) {
    const Rational m2 = PairParams(cfg.r, cfg.ell).m2_pair();
    p = value * std::pow(static_cast<double>(cfg.n), -static_cast<double>(m2.den()) / static_cast<double>(m2.num()));
  }
  if (!(p >= 0.0 && p <= 1.0)) throw ArgumentError("grid value gives p outside [0,1]");
  return p;
}

WilsonInterval wilson_interval(int successes, int total, double z) {
  if (total <= 0) return {};
  const double t = total;
  const double ph = successes / t;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / t;
  const double centre = (ph + z2 / (2.0 * t)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / t + z2 / (4.0 * t * t)) / denom;
  WilsonInterval w{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (successes == 0) w.lo = 0.0;
  if (successes == total) w.hi = 1.0;
  return w;
}

bool McReport::budget_incomplete() const {
  return std::any_of(rows.begin(), rows.end(), [](const McRow& r) { return r.budget_exceeded > 0; });
}

McReport mc_threshold(const McConfig& cfg, int threads) {
  if (cfg.n < 1 || cfg.n > kMaxVertices) throw ArgumentError("n must be in 1..64");
  if (cfg.trials < 1) throw ArgumentError("trials must be at least 1");
  if (cfg.grid.empty()) throw ArgumentError("empty grid");
  if (threads < 1) throw ArgumentError("threads must be at least 1");
  if (!(cfg.z > 0.0)) throw ArgumentError("z must be positive");
  const PairParams pp(cfg.r, cfg.ell);
  std::vector<double> ps;
  for (double v : cfg.grid) ps.push_back(grid_probability(cfg, v));

  const std::size_t trials = static_cast<std::size_t>(cfg.trials);
  const std::size_t tasks = ps.size() * trials;
  std::vector<ArrowStatus> outcome(tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= tasks) return;
      try {
        const Graph g = sample_gnp(cfg.n, ps[k / trials], cfg.seed, k % trials);
        outcome[k] = arrow_graph(g, pp, SolverOptions{cfg.budget}).status;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  McReport report;
  report.config = cfg;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    McRow row;
    row.p = ps[i];
    if (cfg.grid_kind == GridKind::Prefactor) row.c = cfg.grid[i];
    for (std::size_t t = 0; t < trials; ++t) {
      switch (outcome[i * trials + t]) {
        case ArrowStatus::Ramsey: ++row.ramsey; break;
        case ArrowStatus::NotRamsey: ++row.not_ramsey; break;
        case ArrowStatus::BudgetExceeded: ++row.budget_exceeded; break;
      }
    }
    row.interval = wilson_interval(row.ramsey, row.decided(), cfg.z);
    report.rows.push_back(row);
  }
  return report;
}

bool monotone_up_to_overlap(const McReport& report) {
  std::vector<McRow> rows = report.rows;
  std::stable_sort(rows.begin(), rows.end(), [](const McRow& a, const McRow& b) { return a.p < b.p; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (rows[i].frequency() > rows[j].frequency() && rows[i].interval.lo > rows[j].interval.hi) return false;
    }
  }
  return true;
}

const char* to_string(CorpusKind kind) noexcept {
  switch (kind) {
    case CorpusKind::Graph: return "graph";
    case CorpusKind::Critical: return "critical";
    case CorpusKind::Trace: return "trace";
  }
  return "unknown";
}

const char* to_string(RowStatus status) noexcept {
  switch (status) {
    case RowStatus::Pass: return "pass";
    case RowStatus::Fail: return "fail";
    case RowStatus::Budget: return "budget";
  }
  return "unknown";
}

bool VerifyReport::any_fail() const {
  return std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.status == RowStatus::Fail; });
}

bool VerifyReport::any_budget() const {
  return std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.status == RowStatus::Budget; });
}

int VerifyReport::exit_code() const { return any_fail() ? 2 : any_budget() ? 3 : 0; }

namespace {

class RowSink {
 public:
  RowSink(VerifyReport& report, std::string item) : report_(report), item_(std::move(item)) {}

  void add(std::string lemma, bool ok, std::string detail = {}) {
    report_.rows.push_back({item_, std::move(lemma), ok ? RowStatus::Pass : RowStatus::Fail, std::move(detail)});
  }
  void budget(std::string lemma, std::string detail) {
    report_.rows.push_back({item_, std::move(lemma), RowStatus::Budget, std::move(detail)});
  }

 private:
  VerifyReport& report_;
  std::string item_;
};

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const std::string& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

void trace_rows(RowSink& sink, const HyperTreeTrace& trace, const Hypergraph& input, const PairParams& pp) {
  TraceAudit audit;
  try {
    audit = audit_trace(trace, input, pp);
  } catch (const Error& e) {
    sink.add("trace-audit", false, e.what());
    return;
  }
  // Buckets keyed by the tag each failure message starts with.
  static const std::vector<std::pair<std::string, std::vector<std::string>>> buckets = {
      {"hypertreeBasics", {"(hypertreeBasics"}},
      {"deg-lambda", {"(deg-lambda", "delta", "|D_T|", "degenerate flag"}},
      {"claim:beta", {"(eq:lambdaDiff", "(claim:beta"}},
      {"flower-audit", {"(dlambdaC", "(change1petal", "(claim:deg1", "(conclusion", "(F3", "petal", "cycle", "|A_0|"}},
      {"lambda-bound", {"lambda(G_T)"}},
      {"fingerprint-class", {"fingerprint"}},
  };
  std::map<std::string, std::vector<std::string>> sorted;
  for (const std::string& f : audit.failures) {
    std::string target = "trace-structure";
    for (const auto& [name, keys] : buckets) {
      if (std::any_of(keys.begin(), keys.end(), [&](const std::string& k) { return f.find(k) != std::string::npos; })) {
        target = name;
        break;
      }
    }
    sorted[target].push_back(f);
  }
  for (const auto& [name, keys] : buckets) {
    std::string detail = join(sorted[name]);
    if (detail.empty() && name == "deg-lambda") {
      detail = audit.delta_obs ? "delta_obs=" + audit.delta_obs->to_string() : "no degenerate steps";
    }
    if (detail.empty() && name == "fingerprint-class") detail = to_string(trace.fingerprint_class.tag);
    sink.add(name, sorted[name].empty(), std::move(detail));
  }
  sink.add("trace-structure", sorted["trace-structure"].empty(), join(sorted["trace-structure"]));
}

void critical_rows(RowSink& sink, const Hypergraph& h, const PairParams& pp, const VerifyOptions& options) {
  const StarCriticalCertificate star = is_star_critical(h);
  sink.add("starcritical", star.critical && !h.empty(), h.empty() ? "empty hypergraph" : star.critical ? "" : star.describe());
  const StarCriticalCertificate full = ramsey_crit_full_check(h);
  sink.add("ramsey-crit", full.critical, full.critical ? "" : full.describe());
  if (options.check_minimality) {
    try {
      const MinimalityReport m = check_ramsey_minimal(h, options.solver);
      sink.add("ramsey-minimal", m.ramsey && m.minimal, m.failure);
    } catch (const BudgetExceeded& e) {
      sink.budget("ramsey-minimal", e.what());
    }
  }
  const Subgraph g = underlying_graph(h);
  std::string low;
  for (int v = 0; v < g.host_order(); ++v) {
    if (g.has_vertex(v) && g.degree(v) < pp.r()) low += (low.empty() ? "" : ",") + std::to_string(v);
  }
  sink.add("degr", low.empty(), low.empty() ? "" : "degree below r at " + low);
  if (!low.empty()) {
    sink.add("inde-critic", false, "needs minimum degree r");
  } else {
    const VertexPartitionAB ab = partition_ab(g, pp.r());
    std::string inde;
    for (int v = 0; v < g.host_order(); ++v) {
      if (!g.has_vertex(v)) continue;
      if ((ab.a & vertex_bit(v)) && (g.edge_graph().neighbours(v) & ab.a)) inde += " A-edge at " + std::to_string(v);
      if (g.edge_graph().restricted_degree(v, ab.b) < pp.r() - 2) inde += " d_B<r-2 at " + std::to_string(v);
    }
    sink.add("inde-critic", inde.empty(), inde);
  }
  if (!pp.tree_regime()) return;
  const Rational lam = lambda(g, pp);
  sink.add("dens-critic", !g.vertex_count() || lam <= -pp.epsilon_or_throw(), "lambda=" + lam.to_string());
  if (!star.critical || h.empty()) return;
  try {
    const HyperTreeTrace trace = hypertree_run(h, pp);
    trace_rows(sink, trace, h, pp);
  } catch (const Error& e) {
    sink.add("hypertree", false, e.what());
  }
}

}  // namespace

namespace {

void verify_item(VerifyReport& report, RowSink& sink, const CorpusItem& item, const PairParams& pp, const VerifyOptions& options) {
  switch (item.kind) {
    case CorpusKind::Graph: {
      const Graph& g = std::get<Graph>(item.payload);
      const ArrowDecision d = arrow_graph(g, pp, options.solver);
      if (!d.decided()) {
        sink.budget("arrow", "budget exhausted");
        break;
      }
      sink.add("arrow", true, to_string(d.status));
      if (d.status == ArrowStatus::NotRamsey) {
        sink.add("witness", d.witness && witness_is_valid(build_hypergraph(g, pp), *d.witness));
        break;
      }
      try {
        const auto crit = find_crit(g, pp, MinimizeOptions{options.solver, std::nullopt});
        if (!crit) {
          sink.add("find_crit", false, "Ramsey graph without a critical hypergraph");
          break;
        }
        RowSink crit_sink(report, item.name + ":crit");
        critical_rows(crit_sink, *crit, pp, options);
      } catch (const BudgetExceeded& e) {
        sink.budget("find_crit", e.what());
      }
      break;
    }
    case CorpusKind::Critical:
      critical_rows(sink, std::get<Hypergraph>(item.payload), pp, options);
      break;
    case CorpusKind::Trace: {
      const TraceRecord& rec = std::get<TraceRecord>(item.payload);
      trace_rows(sink, rec.trace, rec.input, pp);
      break;
    }
  }
}

}  // namespace

VerifyReport verify_lemmas(const std::vector<CorpusItem>& corpus, const PairParams& pp, const VerifyOptions& options) {
  VerifyReport report;
  report.r = pp.r();
  report.ell = pp.ell();
  for (const CorpusItem& item : corpus) {
    RowSink sink(report, item.name);
    try {
      verify_item(report, sink, item, pp, options);
    } catch (const BudgetExceeded& e) {
      sink.budget("item", e.what());
    } catch (const Error& e) {
      sink.add("item", false, e.what());
    }
  }
  return report;
}

std::vector<CorpusItem> load_corpus(const std::string& dir, const PairParams& pp) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir);
  std::sort(files.begin(), files.end());
  std::vector<CorpusItem> items;
  for (const fs::path& path : files) {
    const std::string ext = path.extension().string();
    const std::string name = path.filename().string();
    if (ext == ".txt" || ext == ".graph") {
      items.push_back({name, CorpusKind::Graph, load_graph_file(path.string())});
    } else if (ext == ".json") {
      const Json j = parse_json(read_text_file(path.string()));
      const std::string type = j.is_object() && j.contains("type") && j["type"].is_string() ? j["type"].get<std::string>() : "hypergraph";
      if (type == "trace") {
        HyperTreeTrace trace = trace_from_json(j, pp);
        Hypergraph input = trace.steps.back().hypergraph;
        items.push_back({name, CorpusKind::Trace, TraceRecord{std::move(trace), std::move(input)}});
      } else if (type == "hypergraph") {
        items.push_back({name, CorpusKind::Critical, hypergraph_from_json(j, pp)});
      } else {
        throw ParseError(name + ": unsupported document type '" + type + "'");
      }
    }
  }
  return items;
}

OutCollection collect_out(const std::vector<std::pair<std::string, Hypergraph>>& inputs, const PairParams& pp, int n,
                          RestrictionMode mode) {
  if (n < 2) throw ArgumentError("n must be at least 2");
  OutCollection out;
  out.n = n;
  out.step_budget = ceil_log2(n);
  std::map<std::string, OutEntry> found;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    HyperTreeOptions options;
    options.mode = mode;
    options.n = n;
    if (mode == RestrictionMode::Batch) {
      for (std::size_t o = 0; o < inputs.size(); ++o) {
        if (o == k) continue;
        if (inputs[o].second.host().order() != inputs[k].second.host().order()) {
          throw ArgumentError("batch inputs must share the host order");
        }
        options.peers.push_back(inputs[o].second);
      }
    }
    const HyperTreeTrace trace = hypertree_run(inputs[k].second, pp, options);
    const std::string code = fingerprint_code(trace.fingerprint);
    out.provenance.emplace_back(inputs[k].first, code);
    if (!found.count(code)) found[code] = OutEntry{code, trace.fingerprint.compact(), trace.fingerprint_class.tag, inputs[k].first};
  }
  for (auto& [code, entry] : found) out.entries.push_back(std::move(entry));
  return out;
}

BoundReport union_bound_report(const PairParams& pp, int n, std::optional<Rational> m, std::optional<Rational> epsilon,
                               std::optional<std::size_t> out_size) {
  if (n < 2) throw ArgumentError("n must be at least 2");
  BoundReport b;
  b.r = pp.r();
  b.ell = pp.ell();
  b.n = n;
  b.m = m.value_or(pp.lambda_clique());
  b.epsilon = epsilon ? *epsilon : pp.epsilon_or_throw();
  const double md = b.m.to_double();
  const double nd = n;
  b.c = std::exp2(-2.0 * md);
  b.log2_n = std::log2(nd);
  b.polylog = std::pow(b.log2_n, md);
  b.n_pow_eps = std::pow(nd, -b.epsilon.to_double());
  b.n_pow_m = std::pow(nd, -md);
  b.bound = b.polylog * (b.n_pow_eps + b.n_pow_m);
  b.out_size = out_size;
  return b;
}

}  // namespace krcl
