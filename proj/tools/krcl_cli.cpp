// Command-line front end; talks to the library through the C interface only.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "krcl/krcl.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitLemma = 2;
constexpr int kExitBudget = 3;

struct Failure {
  krcl_status status;
  std::string message;
};

void check(krcl_status s) {
  if (s != KRCL_OK) throw Failure{s, krcl_last_error()};
}

int exit_for(krcl_status s) {
  if (s == KRCL_ERR_LEMMA) return kExitLemma;
  if (s == KRCL_ERR_BUDGET) return kExitBudget;
  return kExitError;
}

struct StringDeleter {
  void operator()(char* s) const { krcl_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct GraphDeleter {
  void operator()(krcl_graph* g) const { krcl_graph_free(g); }
};
struct HypergraphDeleter {
  void operator()(krcl_hypergraph* h) const { krcl_hypergraph_free(h); }
};
struct TraceDeleter {
  void operator()(krcl_trace* t) const { krcl_trace_free(t); }
};
using Graph = std::unique_ptr<krcl_graph, GraphDeleter>;
using Hypergraph = std::unique_ptr<krcl_hypergraph, HypergraphDeleter>;
using Trace = std::unique_ptr<krcl_trace, TraceDeleter>;

Graph load_graph(const std::string& path) {
  krcl_graph* g = nullptr;
  check(krcl_graph_load(path.c_str(), &g));
  return Graph(g);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{KRCL_ERR_IO, "cannot open " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{KRCL_ERR_IO, "cannot write " + path};
}

Hypergraph load_hypergraph(const std::string& path, int r, int ell) {
  krcl_hypergraph* h = nullptr;
  check(krcl_hypergraph_from_json(slurp(path).c_str(), r, ell, &h));
  return Hypergraph(h);
}

void print(const OwnedString& s) { std::fputs(s.get(), stdout); }

std::string json_list(const std::vector<double>& xs) {
  std::ostringstream ss;
  ss.precision(17);
  ss << '[';
  for (std::size_t k = 0; k < xs.size(); ++k) ss << (k ? "," : "") << xs[k];
  ss << ']';
  return ss.str();
}

krcl_mode parse_mode(const std::string& m) { return m == "batch" ? KRCL_MODE_BATCH : KRCL_MODE_SINGLE; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey properties of (K_r, C_ell): densities, hypergraphs, critical structures, traces, experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", krcl_version());

  int r = 4;
  int ell = 4;
  std::string graph_path;
  std::uint64_t budget = 0;
  const auto pair_flags = [&](CLI::App* sub) {
    sub->add_option("--r", r, "clique order")->required();
    sub->add_option("--ell", ell, "cycle length")->required();
  };

  auto* densities = app.add_subcommand("densities", "closed-form densities, optionally lambda of a graph");
  pair_flags(densities);
  densities->add_option("--graph", graph_path, "graph file")->check(CLI::ExistingFile);

  auto* enumerate = app.add_subcommand("enum", "count clique and cycle hyperedges");
  pair_flags(enumerate);
  enumerate->add_option("--graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);

  auto* arrow = app.add_subcommand("arrow", "decide G -> (K_r, C_ell)");
  pair_flags(arrow);
  arrow->add_option("--graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);
  arrow->add_option("--budget", budget, "propagation budget (0 = default)");

  std::int64_t seed = -1;
  auto* crit = app.add_subcommand("crit", "critical sub-hypergraph of a Ramsey graph");
  pair_flags(crit);
  crit->add_option("--graph", graph_path, "graph file")->required()->check(CLI::ExistingFile);
  crit->add_option("--budget", budget, "propagation budget per search (0 = default)");
  crit->add_option("--seed", seed, "shuffle the deletion order with this seed");

  std::string crit_path;
  std::string mode = "single";
  int n_override = 0;
  std::vector<std::string> peer_paths;
  bool with_audit = false;
  auto* hypertree = app.add_subcommand("hypertree", "run the tree procedure on a critical hypergraph");
  pair_flags(hypertree);
  hypertree->add_option("--crit", crit_path, "hypergraph JSON")->required()->check(CLI::ExistingFile);
  hypertree->add_option("--mode", mode, "restriction mode")->check(CLI::IsMember({"single", "batch"}));
  hypertree->add_option("--n", n_override, "n for the step budget (default: host order)");
  hypertree->add_option("--peer", peer_paths, "peer hypergraph JSON for batch mode")->check(CLI::ExistingFile);
  hypertree->add_flag("--audit", with_audit, "also audit the trace; exit 2 on a failed check");

  int mc_n = 0;
  std::vector<double> c_grid;
  std::vector<double> p_grid;
  int trials = 0;
  std::uint64_t mc_seed = 0;
  int threads = 1;
  std::string csv_path;
  std::string json_path;
  auto* mc = app.add_subcommand("mc", "Monte Carlo Ramsey frequencies on G(n,p)");
  mc->add_option("--n", mc_n, "vertices")->required();
  pair_flags(mc);
  auto* c_opt = mc->add_option("--c-grid", c_grid, "prefactors c, p = c n^(-1/m2)")->delimiter(',');
  auto* p_opt = mc->add_option("--p-grid", p_grid, "probabilities")->delimiter(',');
  c_opt->excludes(p_opt);
  mc->add_option("--trials", trials, "trials per grid point")->required();
  mc->add_option("--seed", mc_seed, "master seed");
  mc->add_option("--budget", budget, "propagation budget per trial (0 = default)");
  mc->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  mc->add_option("--out", csv_path, "CSV output file")->required();
  mc->add_option("--json", json_path, "JSON report file (default: stdout)");

  std::string corpus;
  auto* verify = app.add_subcommand("verify", "check every applicable lemma on a corpus directory");
  pair_flags(verify);
  verify->add_option("--corpus", corpus, "directory of graphs, hypergraphs and traces")->required()->check(CLI::ExistingDirectory);
  verify->add_option("--budget", budget, "propagation budget per search (0 = default)");

  std::string inputs;
  int out_n = 0;
  auto* out = app.add_subcommand("out-collect", "distinct fingerprints over a set of inputs");
  pair_flags(out);
  out->add_option("--inputs", inputs, "directory of hypergraph JSON or graph files")->required()->check(CLI::ExistingDirectory);
  out->add_option("--n", out_n, "n for the step budget")->required();
  out->add_option("--mode", mode, "restriction mode")->check(CLI::IsMember({"single", "batch"}));

  int bound_n = 0;
  auto* bound = app.add_subcommand("bound-report", "evaluate the union bound at n");
  pair_flags(bound);
  bound->add_option("--n", bound_n, "n")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    char* raw = nullptr;
    if (densities->parsed()) {
      Graph g = graph_path.empty() ? Graph() : load_graph(graph_path);
      check(krcl_densities_json(r, ell, g.get(), &raw));
      print(OwnedString(raw));
      return kExitOk;
    }
    if (enumerate->parsed()) {
      Graph g = load_graph(graph_path);
      check(krcl_enum_json(r, ell, g.get(), &raw));
      print(OwnedString(raw));
      return kExitOk;
    }
    if (arrow->parsed()) {
      Graph g = load_graph(graph_path);
      krcl_arrow_outcome outcome = KRCL_NOT_RAMSEY;
      check(krcl_arrow_json(r, ell, g.get(), budget, &raw, &outcome));
      print(OwnedString(raw));
      return outcome == KRCL_UNDECIDED ? kExitBudget : kExitOk;
    }
    if (crit->parsed()) {
      Graph g = load_graph(graph_path);
      krcl_hypergraph* h = nullptr;
      check(krcl_find_crit(r, ell, g.get(), budget, seed, &h));
      if (!h) {
        std::cout << "{\n  \"schema_version\": 1,\n  \"type\": \"crit\",\n  \"is_ramsey\": false\n}\n";
        return kExitOk;
      }
      Hypergraph owned(h);
      check(krcl_hypergraph_to_json(owned.get(), &raw));
      print(OwnedString(raw));
      return kExitOk;
    }
    if (hypertree->parsed()) {
      Hypergraph h = load_hypergraph(crit_path, r, ell);
      std::vector<Hypergraph> peers;
      std::vector<const krcl_hypergraph*> peer_ptrs;
      for (const std::string& p : peer_paths) {
        peers.push_back(load_hypergraph(p, r, ell));
        peer_ptrs.push_back(peers.back().get());
      }
      krcl_trace* t = nullptr;
      check(krcl_hypertree_run(h.get(), parse_mode(mode), n_override, peer_ptrs.data(), peer_ptrs.size(), &t));
      Trace trace(t);
      int ok = 1;
      if (with_audit) {
        check(krcl_trace_audited_json(trace.get(), h.get(), &raw, &ok));
      } else {
        check(krcl_trace_to_json(trace.get(), &raw));
      }
      print(OwnedString(raw));
      return ok ? kExitOk : kExitLemma;
    }
    if (mc->parsed()) {
      if (c_grid.empty() == p_grid.empty()) throw Failure{KRCL_ERR_ARGUMENT, "give exactly one of --c-grid and --p-grid"};
      std::ostringstream cfg;
      cfg << "{\"n\":" << mc_n << ",\"r\":" << r << ",\"ell\":" << ell << ","
          << (c_grid.empty() ? "\"p_grid\":" + json_list(p_grid) : "\"c_grid\":" + json_list(c_grid)) << ",\"trials\":" << trials
          << ",\"seed\":" << mc_seed;
      if (budget != 0) cfg << ",\"budget\":" << budget;
      cfg << "}";
      char* csv = nullptr;
      int incomplete = 0;
      check(krcl_mc_run(cfg.str().c_str(), threads, &csv, &raw, &incomplete));
      OwnedString csv_text(csv);
      OwnedString json(raw);
      spill(csv_path, csv_text.get());
      if (json_path.empty()) {
        print(json);
      } else {
        spill(json_path, json.get());
      }
      return incomplete ? kExitBudget : kExitOk;
    }
    if (verify->parsed()) {
      int code = 0;
      check(krcl_verify_corpus(corpus.c_str(), r, ell, budget, &raw, &code));
      print(OwnedString(raw));
      return code;
    }
    if (out->parsed()) {
      check(krcl_out_collect(inputs.c_str(), r, ell, out_n, parse_mode(mode), &raw));
      print(OwnedString(raw));
      return kExitOk;
    }
    if (bound->parsed()) {
      check(krcl_bound_report(r, ell, bound_n, &raw));
      print(OwnedString(raw));
      return kExitOk;
    }
  } catch (const Failure& f) {
    std::cerr << "error (" << krcl_status_name(f.status) << "): " << f.message << "\n";
    return exit_for(f.status);
  }
  return kExitError;
}
