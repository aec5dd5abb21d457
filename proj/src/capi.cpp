#include "krcl/krcl.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <string>

#include "krcl/error.hpp"
#include "krcl/experiments.hpp"
#include "krcl/io.hpp"

struct krcl_graph {
  krcl::Graph g;
};

struct krcl_hypergraph {
  krcl::Hypergraph h;
  krcl::PairParams pp;
};

struct krcl_trace {
  krcl::HyperTreeTrace trace;
  krcl::PairParams pp;
};

namespace {

thread_local std::string last_error;

krcl_status fail(krcl_status status, const std::string& what) {
  last_error = what;
  return status;
}

krcl_status status_of(krcl::ErrorKind kind) {
  using krcl::ErrorKind;
  switch (kind) {
    case ErrorKind::Argument: return KRCL_ERR_ARGUMENT;
    case ErrorKind::Parse: return KRCL_ERR_PARSE;
    case ErrorKind::Domain: return KRCL_ERR_DOMAIN;
    case ErrorKind::Precondition: return KRCL_ERR_PRECONDITION;
    case ErrorKind::LemmaViolation: return KRCL_ERR_LEMMA;
    case ErrorKind::BudgetExceeded: return KRCL_ERR_BUDGET;
    case ErrorKind::Overflow: return KRCL_ERR_OVERFLOW;
    case ErrorKind::Io: return KRCL_ERR_IO;
  }
  return KRCL_ERR_INTERNAL;
}

// Runs `body`, turning exceptions into status codes.
template <typename F>
krcl_status guarded(F&& body) {
  try {
    body();
    return KRCL_OK;
  } catch (const krcl::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KRCL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KRCL_ERR_INTERNAL, e.what());
  }
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
void need(const T* p, const char* what) {
  if (!p) throw krcl::ArgumentError(std::string(what) + " is NULL");
}

std::string dump(const krcl::Json& j) { return j.dump(2) + "\n"; }

krcl::SolverOptions solver_options(uint64_t budget) {
  krcl::SolverOptions o;
  if (budget != 0) o.budget = budget;
  return o;
}

krcl::RestrictionMode restriction(krcl_mode mode) {
  if (mode == KRCL_MODE_SINGLE) return krcl::RestrictionMode::SingleInput;
  if (mode == KRCL_MODE_BATCH) return krcl::RestrictionMode::Batch;
  throw krcl::ArgumentError("unknown restriction mode");
}

}  // namespace

extern "C" {

const char* krcl_version(void) { return "0.1.0"; }

const char* krcl_last_error(void) { return last_error.c_str(); }

const char* krcl_status_name(krcl_status status) {
  switch (status) {
    case KRCL_OK: return "ok";
    case KRCL_ERR_ARGUMENT: return "argument";
    case KRCL_ERR_PARSE: return "parse";
    case KRCL_ERR_DOMAIN: return "domain";
    case KRCL_ERR_PRECONDITION: return "precondition";
    case KRCL_ERR_LEMMA: return "lemma_violation";
    case KRCL_ERR_BUDGET: return "budget_exceeded";
    case KRCL_ERR_OVERFLOW: return "overflow";
    case KRCL_ERR_IO: return "io";
    case KRCL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void krcl_string_free(char* s) { std::free(s); }

krcl_status krcl_graph_parse(const char* text, krcl_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new krcl_graph{krcl::parse_graph_text(text)};
  });
}

krcl_status krcl_graph_load(const char* path, krcl_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new krcl_graph{krcl::load_graph_file(path)};
  });
}

krcl_status krcl_graph_complete(int n, krcl_graph** out) {
  return guarded([&] {
    need(out, "out");
    if (n < 0 || n > krcl::kMaxVertices) throw krcl::ArgumentError("n must be in 0..64");
    *out = new krcl_graph{krcl::Graph::complete(n)};
  });
}

krcl_status krcl_graph_order(const krcl_graph* g, int* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->g.order();
  });
}

krcl_status krcl_graph_size(const krcl_graph* g, int* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->g.size();
  });
}

krcl_status krcl_graph_to_text(const krcl_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = copy_out(krcl::format_graph_text(g->g));
  });
}

void krcl_graph_free(krcl_graph* g) { delete g; }

krcl_status krcl_densities_json(int r, int ell, const krcl_graph* g, char** out) {
  return guarded([&] {
    need(out, "out");
    const krcl::PairParams pp(r, ell);
    *out = copy_out(dump(krcl::densities_to_json(pp, g ? std::optional<krcl::Graph>(g->g) : std::nullopt)));
  });
}

krcl_status krcl_enum_json(int r, int ell, const krcl_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    const krcl::PairParams pp(r, ell);
    *out = copy_out(dump(krcl::enum_to_json(krcl::build_hypergraph(g->g, pp))));
  });
}

krcl_status krcl_arrow_json(int r, int ell, const krcl_graph* g, uint64_t budget, char** out, krcl_arrow_outcome* outcome) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    const krcl::PairParams pp(r, ell);
    const krcl::ArrowDecision d = krcl::arrow_graph(g->g, pp, solver_options(budget));
    *out = copy_out(dump(krcl::arrow_to_json(d)));
    if (outcome) *outcome = !d.decided() ? KRCL_UNDECIDED : d.is_ramsey() ? KRCL_RAMSEY : KRCL_NOT_RAMSEY;
  });
}

krcl_status krcl_find_crit(int r, int ell, const krcl_graph* g, uint64_t budget, int64_t seed, krcl_hypergraph** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = nullptr;
    const krcl::PairParams pp(r, ell);
    krcl::MinimizeOptions options;
    options.solver = solver_options(budget);
    if (seed >= 0) options.shuffle_seed = static_cast<std::uint64_t>(seed);
    auto h = krcl::find_crit(g->g, pp, options);
    if (h) *out = new krcl_hypergraph{std::move(*h), pp};
  });
}

krcl_status krcl_hypergraph_from_json(const char* json, int r, int ell, krcl_hypergraph** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    const krcl::PairParams pp(r, ell);
    *out = new krcl_hypergraph{krcl::hypergraph_from_json(krcl::parse_json(json), pp), pp};
  });
}

krcl_status krcl_hypergraph_to_json(const krcl_hypergraph* h, char** out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    *out = copy_out(dump(krcl::hypergraph_to_json(h->h, h->pp)));
  });
}

krcl_status krcl_hypergraph_size(const krcl_hypergraph* h, size_t* out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    *out = h->h.size();
  });
}

void krcl_hypergraph_free(krcl_hypergraph* h) { delete h; }

krcl_status krcl_hypertree_run(const krcl_hypergraph* h, krcl_mode mode, int n, const krcl_hypergraph* const* peers,
                               size_t peer_count, krcl_trace** out) {
  return guarded([&] {
    need(h, "hypergraph");
    need(out, "out");
    if (peer_count > 0) need(peers, "peers");
    krcl::HyperTreeOptions options;
    options.mode = restriction(mode);
    if (n > 0) options.n = n;
    if (options.mode == krcl::RestrictionMode::Batch) {
      for (size_t k = 0; k < peer_count; ++k) {
        need(peers[k], "peer");
        options.peers.push_back(peers[k]->h);
      }
    }
    *out = new krcl_trace{krcl::hypertree_run(h->h, h->pp, options), h->pp};
  });
}

krcl_status krcl_trace_to_json(const krcl_trace* t, char** out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = copy_out(dump(krcl::trace_to_json(t->trace, t->pp)));
  });
}

krcl_status krcl_trace_audit_json(const krcl_trace* t, const krcl_hypergraph* h, char** out, int* ok) {
  return guarded([&] {
    need(t, "trace");
    need(h, "hypergraph");
    need(out, "out");
    const krcl::TraceAudit audit = krcl::audit_trace(t->trace, h->h, t->pp);
    if (ok) *ok = audit.ok ? 1 : 0;
    *out = copy_out(dump(krcl::trace_audit_to_json(audit)));
  });
}

krcl_status krcl_trace_audited_json(const krcl_trace* t, const krcl_hypergraph* h, char** out, int* ok) {
  return guarded([&] {
    need(t, "trace");
    need(h, "hypergraph");
    need(out, "out");
    const krcl::TraceAudit audit = krcl::audit_trace(t->trace, h->h, t->pp);
    if (ok) *ok = audit.ok ? 1 : 0;
    krcl::Json j = krcl::trace_to_json(t->trace, t->pp);
    j["audit"] = krcl::trace_audit_to_json(audit);
    *out = copy_out(dump(j));
  });
}

krcl_status krcl_trace_fingerprint_code(const krcl_trace* t, char** out) {
  return guarded([&] {
    need(t, "trace");
    need(out, "out");
    *out = copy_out(krcl::fingerprint_code(t->trace.fingerprint));
  });
}

void krcl_trace_free(krcl_trace* t) { delete t; }

krcl_status krcl_mc_run(const char* config_json, int threads, char** csv_out, char** json_out, int* budget_incomplete) {
  return guarded([&] {
    need(config_json, "config");
    const krcl::Json j = krcl::parse_json(config_json);
    krcl::McConfig cfg;
    try {
      cfg.n = j.at("n").get<int>();
      cfg.r = j.value("r", 4);
      cfg.ell = j.value("ell", 4);
      const bool has_c = j.contains("c_grid");
      const bool has_p = j.contains("p_grid");
      if (has_c == has_p) throw krcl::ArgumentError("give exactly one of c_grid and p_grid");
      cfg.grid_kind = has_c ? krcl::GridKind::Prefactor : krcl::GridKind::Probability;
      cfg.grid = j.at(has_c ? "c_grid" : "p_grid").get<std::vector<double>>();
      cfg.trials = j.at("trials").get<int>();
      cfg.seed = j.value("seed", std::uint64_t{0});
      cfg.budget = j.value("budget", krcl::SolverOptions{}.budget);
      cfg.z = j.value("z", 1.96);
    } catch (const nlohmann::json::exception& e) {
      throw krcl::ParseError(std::string("bad mc config: ") + e.what());
    }
    const krcl::McReport report = krcl::mc_threshold(cfg, threads);
    if (budget_incomplete) *budget_incomplete = report.budget_incomplete() ? 1 : 0;
    char* csv = csv_out ? copy_out(krcl::mc_to_csv(report)) : nullptr;
    try {
      if (json_out) *json_out = copy_out(dump(krcl::mc_to_json(report)));
    } catch (...) {
      std::free(csv);
      throw;
    }
    if (csv_out) *csv_out = csv;
  });
}

krcl_status krcl_verify_corpus(const char* dir, int r, int ell, uint64_t budget, char** json_out, int* exit_code) {
  return guarded([&] {
    need(dir, "dir");
    need(json_out, "json_out");
    const krcl::PairParams pp(r, ell);
    krcl::VerifyOptions options;
    options.solver = solver_options(budget);
    const krcl::VerifyReport report = krcl::verify_lemmas(krcl::load_corpus(dir, pp), pp, options);
    if (exit_code) *exit_code = report.exit_code();
    *json_out = copy_out(dump(krcl::verify_to_json(report)));
  });
}

krcl_status krcl_out_collect(const char* dir, int r, int ell, int n, krcl_mode mode, char** json_out) {
  return guarded([&] {
    need(dir, "dir");
    need(json_out, "json_out");
    const krcl::PairParams pp(r, ell);
    std::vector<std::pair<std::string, krcl::Hypergraph>> inputs;
    for (krcl::CorpusItem& item : krcl::load_corpus(dir, pp)) {
      if (item.kind == krcl::CorpusKind::Critical) {
        inputs.emplace_back(item.name, std::get<krcl::Hypergraph>(item.payload));
      } else if (item.kind == krcl::CorpusKind::Graph) {
        auto h = krcl::find_crit(std::get<krcl::Graph>(item.payload), pp);
        if (!h) throw krcl::PreconditionError(item.name + " is not Ramsey");
        inputs.emplace_back(item.name, std::move(*h));
      }
    }
    *json_out = copy_out(dump(krcl::out_to_json(krcl::collect_out(inputs, pp, n, restriction(mode)))));
  });
}

krcl_status krcl_bound_report(int r, int ell, int n, char** json_out) {
  return guarded([&] {
    need(json_out, "json_out");
    const krcl::PairParams pp(r, ell);
    *json_out = copy_out(dump(krcl::bound_to_json(krcl::union_bound_report(pp, n))));
  });
}

}  // extern "C"
