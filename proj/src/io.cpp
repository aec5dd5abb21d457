#include "krcl/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "krcl/canonical.hpp"
#include "krcl/error.hpp"

namespace krcl {

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path);
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path);
}

std::string hex_encode(std::string_view bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 15]);
  }
  return out;
}

namespace {

// Field access with ParseError instead of the library's exceptions.
const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad field '") + key + "': " + e.what());
  }
}

template <typename T>
T get_value(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad ") + what + ": " + e.what());
  }
}

void check_schema(const Json& j, const char* type) {
  if (get<int>(j, "schema_version") != kSchemaVersion) throw ParseError("unsupported schema_version");
  if (j.contains("type") && get<std::string>(j, "type") != type) {
    throw ParseError("expected a '" + std::string(type) + "' document");
  }
}

Json header(const char* type) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["type"] = type;
  return j;
}

void check_pair(const Json& j, const PairParams& pp) {
  if (j.contains("r") && get<int>(j, "r") != pp.r()) throw ArgumentError("document r differs from --r");
  if (j.contains("ell") && get<int>(j, "ell") != pp.ell()) throw ArgumentError("document ell differs from --ell");
}

}  // namespace

Json rational_to_json(const Rational& q) { return Json{{"num", q.num()}, {"den", q.den()}}; }

Rational rational_from_json(const Json& j) {
  const auto den = get<std::int64_t>(j, "den");
  if (den <= 0) throw ParseError("rational with non-positive denominator");
  return Rational(get<std::int64_t>(j, "num"), den);
}

Json edges_to_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(Json::array({e.u, e.v}));
  return out;
}

std::vector<Edge> edges_from_json(const Json& j, int n) {
  if (!j.is_array()) throw ParseError("edge list is not an array");
  std::vector<Edge> out;
  for (const Json& p : j) {
    if (!p.is_array() || p.size() != 2) throw ParseError("edge is not a pair");
    const int u = get_value<int>(p[0], "edge endpoint");
    const int v = get_value<int>(p[1], "edge endpoint");
    if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError("edge endpoint out of range");
    if (u == v) throw ParseError("self-loop in edge list");
    out.push_back(make_edge(u, v));
  }
  return out;
}

Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.order();
  j["edges"] = edges_to_json(g.edges());
  return j;
}

Graph graph_from_json(const Json& j) {
  const int n = get<int>(j, "n");
  if (n < 0 || n > kMaxVertices) throw ParseError("vertex count out of range");
  Graph g(n);
  for (const Edge& e : edges_from_json(field(j, "edges"), n)) {
    if (g.has_edge(e)) throw ParseError("duplicate edge");
    g.add_edge(e);
  }
  return g;
}

std::string fingerprint_code(const Subgraph& g) { return hex_encode(canonical_code(g.compact())); }

Json hyperedge_to_json(const Hyperedge& e) {
  Json j;
  j["kind"] = e.kind == HyperedgeKind::Clique ? "clique" : "cycle";
  j["edges"] = edges_to_json(e.edge_list());
  return j;
}

Hyperedge hyperedge_from_json(const Json& j, const Graph& host, const PairParams& pp) {
  const std::string kind = get<std::string>(j, "kind");
  HyperedgeKind k;
  if (kind == "clique") {
    k = HyperedgeKind::Clique;
  } else if (kind == "cycle") {
    k = HyperedgeKind::Cycle;
  } else {
    throw ParseError("unknown hyperedge kind '" + kind + "'");
  }
  std::vector<Edge> edges = edges_from_json(field(j, "edges"), host.order());
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw ParseError("duplicate edge in hyperedge");
  for (const Edge& e : edges) {
    if (!host.has_edge(e)) throw ParseError("hyperedge uses an edge missing from the host");
  }
  const Subgraph s = Subgraph::spanned_by(host.order(), edges);
  const int v = s.vertex_count();
  if (k == HyperedgeKind::Clique) {
    if (v != pp.r() || s.edge_count() != v * (v - 1) / 2) throw ParseError("clique hyperedge is not a K_r");
  } else {
    bool ok = v == pp.ell() && s.edge_count() == v;
    for (int x = 0; ok && x < host.order(); ++x) {
      if (s.has_vertex(x) && s.degree(x) != 2) ok = false;
    }
    if (ok) {  // one component
      const VertexSet all = s.vertices();
      VertexSet seen = all & (~all + 1);
      VertexSet frontier = seen;
      while (frontier) {
        VertexSet next = 0;
        for (VertexSet f = frontier; f; f &= f - 1) next |= s.edge_graph().neighbours(std::countr_zero(f));
        frontier = next & ~seen;
        seen |= next;
      }
      ok = seen == all;
    }
    if (!ok) throw ParseError("cycle hyperedge is not a C_ell");
  }
  return Hyperedge::from_edges(k, edges);
}

Json hypergraph_to_json(const Hypergraph& h, const PairParams& pp) {
  Json j = header("hypergraph");
  j["r"] = pp.r();
  j["ell"] = pp.ell();
  j["n"] = h.host().order();
  j["host"] = graph_to_json(h.host());
  Json edges = Json::array();
  for (const Hyperedge& e : h.hyperedges()) edges.push_back(hyperedge_to_json(e));
  j["hyperedges"] = std::move(edges);
  return j;
}

Hypergraph hypergraph_from_json(const Json& j, const PairParams& pp) {
  if (j.contains("schema_version")) check_schema(j, "hypergraph");
  check_pair(j, pp);
  const Json& list = field(j, "hyperedges");
  if (!list.is_array()) throw ParseError("hyperedges is not an array");
  Graph host;
  if (j.contains("host")) {
    host = graph_from_json(field(j, "host"));
    if (j.contains("n") && get<int>(j, "n") != host.order()) throw ParseError("n differs from the host order");
  } else {
    const int n = get<int>(j, "n");
    if (n < 0 || n > kMaxVertices) throw ParseError("vertex count out of range");
    host = Graph(n);
    for (const Json& e : list) {
      for (const Edge& x : edges_from_json(field(e, "edges"), n)) {
        if (!host.has_edge(x)) host.add_edge(x);
      }
    }
  }
  std::vector<Hyperedge> edges;
  for (const Json& e : list) edges.push_back(hyperedge_from_json(e, host, pp));
  const std::size_t count = edges.size();
  Hypergraph h(host, std::move(edges));
  if (h.size() != count) throw ParseError("duplicate hyperedge");
  return h;
}

Json densities_to_json(const PairParams& pp, const std::optional<Graph>& g) {
  Json j = header("densities");
  j["r"] = pp.r();
  j["ell"] = pp.ell();
  j["m2_F"] = rational_to_json(m2_closed(ClosedForm::Clique, pp.r(), pp.ell()));
  j["m2_H"] = rational_to_json(m2_closed(ClosedForm::Cycle, pp.r(), pp.ell()));
  j["m2_pair"] = rational_to_json(pp.m2_pair());
  j["epsilon"] = pp.epsilon() ? rational_to_json(*pp.epsilon()) : Json(nullptr);
  j["lambda_clique"] = rational_to_json(pp.lambda_clique());
  if (g) j["lambda"] = rational_to_json(lambda(*g, pp));
  return j;
}

Json enum_to_json(const Hypergraph& h) {
  Json j = header("enum");
  j["cliques"] = h.clique_count();
  j["cycles"] = h.cycle_count();
  j["hypervertices"] = h.vertex_count();
  return j;
}

Json arrow_to_json(const ArrowDecision& d) {
  Json j = header("arrow");
  j["is_ramsey"] = d.status == ArrowStatus::Ramsey;
  j["status"] = to_string(d.status);
  if (d.witness) {
    Json w = Json::array();
    for (const auto& [id, color] : d.witness->colors) {
      const Edge e = edge_from_id(id);
      w.push_back(Json::array({e.u, e.v, color}));
    }
    j["witness"] = std::move(w);
  }
  j["nodes"] = d.stats.nodes;
  j["propagations"] = d.stats.propagations;
  return j;
}

namespace {

template <typename E>
E enum_from(const std::string& s, std::initializer_list<E> values, const char* what) {
  for (E v : values) {
    if (s == to_string(v)) return v;
  }
  throw ParseError(std::string("unknown ") + what + " '" + s + "'");
}

Json fingerprint_class_to_json(const FingerprintClass& c) {
  Json j;
  j["tag"] = to_string(c.tag);
  j["epsilon"] = rational_to_json(c.epsilon);
  j["m"] = rational_to_json(c.m);
  j["edge_count"] = c.edge_count;
  j["lambda"] = rational_to_json(c.lambda);
  return j;
}

}  // namespace

Json trace_to_json(const HyperTreeTrace& trace, const PairParams& pp) {
  Json j = header("trace");
  j["r"] = pp.r();
  j["ell"] = pp.ell();
  j["n"] = trace.n;
  j["step_budget"] = trace.step_budget;
  j["host"] = graph_to_json(trace.steps.front().hypergraph.host());
  Json steps = Json::array();
  const TraceStep* prev = nullptr;
  for (const TraceStep& s : trace.steps) {
    Json st;
    st["i"] = s.index;
    st["kind"] = to_string(s.kind);
    st["new_vertices"] = s.new_vertices;
    st["lambda"] = rational_to_json(s.lambda);
    st["degenerate"] = s.degenerate;
    st["degenerate_steps"] = s.degenerate_steps;
    Json added = Json::array();
    for (const Hyperedge& e : s.hypergraph.hyperedges()) {
      if (!prev || !prev->hypergraph.contains(e)) added.push_back(hyperedge_to_json(e));
    }
    st["added"] = std::move(added);
    std::vector<Edge> labelled;
    for (std::size_t k = prev ? prev->sigma.size() : 0; k < s.sigma.size(); ++k) {
      labelled.push_back(edge_from_id(s.sigma.edges_by_label()[k]));
    }
    st["sigma_new"] = edges_to_json(labelled);
    if (s.clique) st["clique"] = hyperedge_to_json(*s.clique);
    if (s.flower) {
      Json f;
      f["seed"] = edges_to_json({edge_from_id(s.flower->seed)})[0];
      f["cycle"] = hyperedge_to_json(s.flower->cycle);
      Json petals = Json::array();
      for (const auto& [e, p] : s.flower->petals) {
        Json pj;
        pj["edge"] = edges_to_json({edge_from_id(e)})[0];
        pj["clique"] = hyperedge_to_json(p);
        petals.push_back(std::move(pj));
      }
      f["petals"] = std::move(petals);
      st["flower"] = std::move(f);
    }
    steps.push_back(std::move(st));
    prev = &s;
  }
  j["steps"] = std::move(steps);
  j["stop_reason"] = to_string(trace.stop_reason);
  Json fp;
  fp["n"] = trace.fingerprint.host_order();
  fp["vertices"] = trace.fingerprint.vertex_count();
  fp["edges"] = edges_to_json(trace.fingerprint.edges());
  fp["canonical_code"] = fingerprint_code(trace.fingerprint);
  j["fingerprint"] = std::move(fp);
  j["class"] = to_string(trace.fingerprint_class.tag);
  j["fingerprint_class"] = fingerprint_class_to_json(trace.fingerprint_class);
  j["stopping_time"] = trace.stopping_time();
  return j;
}

HyperTreeTrace trace_from_json(const Json& j, const PairParams& pp) {
  check_schema(j, "trace");
  check_pair(j, pp);
  HyperTreeTrace trace;
  trace.n = get<int>(j, "n");
  trace.step_budget = get<int>(j, "step_budget");
  const Graph host = graph_from_json(field(j, "host"));
  const Json& steps = field(j, "steps");
  if (!steps.is_array() || steps.empty()) throw ParseError("trace without steps");
  Hypergraph current(host);
  EdgeLabelling sigma;
  for (const Json& st : steps) {
    TraceStep s;
    s.index = get<int>(st, "i");
    s.kind = enum_from(get<std::string>(st, "kind"), {StepKind::Init, StepKind::CliqueAttach, StepKind::FlowerAttach}, "step kind");
    s.new_vertices = get<int>(st, "new_vertices");
    s.lambda = rational_from_json(field(st, "lambda"));
    s.degenerate = get<bool>(st, "degenerate");
    s.degenerate_steps = get<std::vector<int>>(st, "degenerate_steps");
    std::vector<Hyperedge> added;
    for (const Json& e : field(st, "added")) added.push_back(hyperedge_from_json(e, host, pp));
    current = current.with(added);
    s.hypergraph = current;
    for (const Edge& e : edges_from_json(field(st, "sigma_new"), host.order())) {
      try {
        sigma.push(edge_id(e));
      } catch (const ArgumentError& err) {
        throw ParseError(std::string("bad labelling: ") + err.what());
      }
    }
    s.sigma = sigma;
    if (st.contains("clique")) s.clique = hyperedge_from_json(field(st, "clique"), host, pp);
    if (st.contains("flower")) {
      const Json& fj = field(st, "flower");
      Flower f;
      f.seed = edge_id(edges_from_json(Json::array({field(fj, "seed")}), host.order())[0]);
      f.cycle = hyperedge_from_json(field(fj, "cycle"), host, pp);
      for (const Json& pj : field(fj, "petals")) {
        const int e = edge_id(edges_from_json(Json::array({field(pj, "edge")}), host.order())[0]);
        f.petals.emplace_back(e, hyperedge_from_json(field(pj, "clique"), host, pp));
      }
      s.flower = std::move(f);
    }
    trace.steps.push_back(std::move(s));
  }
  trace.stop_reason = enum_from(get<std::string>(j, "stop_reason"), {StopReason::LambdaReached, StopReason::StepBudget}, "stop reason");
  const Json& fp = field(j, "fingerprint");
  const int fn = get<int>(fp, "n");
  if (fn != host.order()) throw ParseError("fingerprint host order differs");
  const std::vector<Edge> fedges = edges_from_json(field(fp, "edges"), fn);
  trace.fingerprint = Subgraph::spanned_by(fn, fedges);
  if (fp.contains("canonical_code") && get<std::string>(fp, "canonical_code") != fingerprint_code(trace.fingerprint)) {
    throw ParseError("fingerprint canonical_code does not match its edges");
  }
  const Json& fc = field(j, "fingerprint_class");
  FingerprintClass c;
  c.tag = enum_from(get<std::string>(fc, "tag"), {FingerprintTag::J1, FingerprintTag::J2, FingerprintTag::Unclassified}, "class");
  c.epsilon = rational_from_json(field(fc, "epsilon"));
  c.m = rational_from_json(field(fc, "m"));
  c.edge_count = get<int>(fc, "edge_count");
  c.lambda = rational_from_json(field(fc, "lambda"));
  trace.fingerprint_class = c;
  return trace;
}

Json trace_audit_to_json(const TraceAudit& audit) {
  Json j = header("trace_audit");
  j["ok"] = audit.ok;
  j["failures"] = audit.failures;
  j["delta_obs"] = audit.delta_obs ? rational_to_json(*audit.delta_obs) : Json(nullptr);
  Json steps = Json::array();
  for (std::size_t k = 0; k < audit.steps.size(); ++k) {
    const StepAudit& s = audit.steps[k];
    Json sj;
    sj["i"] = static_cast<int>(k) + 1;
    sj["ok"] = s.ok;
    sj["lambda_change"] = rational_to_json(s.lambda_change);
    if (s.a0 > 0) {
      sj["cycle_increment"] = rational_to_json(s.cycle_increment);
      sj["petal_sequence_length"] = s.petal_sequence_length;
      sj["a0"] = s.a0;
    }
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  return j;
}

namespace {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("bad number '" + std::string(s) + "'");
  return x;
}

int parse_int(std::string_view s) {
  int x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("bad integer '" + std::string(s) + "'");
  return x;
}

constexpr std::string_view kCsvHeader = "p,ramsey,not_ramsey,budget_exceeded,lo,hi";

}  // namespace

std::string mc_to_csv(const McReport& report) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const McRow& row : report.rows) {
    out += format_double(row.p) + ',' + std::to_string(row.ramsey) + ',' + std::to_string(row.not_ramsey) + ',' +
           std::to_string(row.budget_exceeded) + ',' + format_double(row.interval.lo) + ',' + format_double(row.interval.hi) + '\n';
  }
  return out;
}

std::vector<McRow> mc_rows_from_csv(std::string_view csv) {
  std::vector<std::string_view> lines;
  while (!csv.empty()) {
    const auto nl = csv.find('\n');
    lines.push_back(csv.substr(0, nl));
    csv = nl == std::string_view::npos ? std::string_view() : csv.substr(nl + 1);
  }
  if (lines.empty() || lines.front() != kCsvHeader) throw ParseError("CSV header mismatch");
  std::vector<McRow> rows;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    std::vector<std::string_view> cells;
    std::string_view line = lines[k];
    for (;;) {
      const auto comma = line.find(',');
      cells.push_back(line.substr(0, comma));
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (cells.size() != 6) throw ParseError("CSV row " + std::to_string(k) + " has " + std::to_string(cells.size()) + " cells");
    McRow row;
    row.p = parse_double(cells[0]);
    row.ramsey = parse_int(cells[1]);
    row.not_ramsey = parse_int(cells[2]);
    row.budget_exceeded = parse_int(cells[3]);
    row.interval = {parse_double(cells[4]), parse_double(cells[5])};
    rows.push_back(row);
  }
  return rows;
}

Json mc_to_json(const McReport& report) {
  const McConfig& c = report.config;
  Json j = header("mc");
  Json cfg;
  cfg["n"] = c.n;
  cfg["r"] = c.r;
  cfg["ell"] = c.ell;
  cfg["grid_kind"] = c.grid_kind == GridKind::Prefactor ? "c" : "p";
  cfg["grid"] = c.grid;
  cfg["trials"] = c.trials;
  cfg["seed"] = c.seed;
  cfg["budget"] = c.budget;
  cfg["z"] = c.z;
  j["config"] = std::move(cfg);
  Json rows = Json::array();
  for (const McRow& row : report.rows) {
    Json rj;
    rj["p"] = row.p;
    rj["c"] = row.c ? Json(*row.c) : Json(nullptr);
    rj["ramsey"] = row.ramsey;
    rj["not_ramsey"] = row.not_ramsey;
    rj["budget_exceeded"] = row.budget_exceeded;
    rj["frequency"] = row.frequency();
    rj["lo"] = row.interval.lo;
    rj["hi"] = row.interval.hi;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  j["monotone_up_to_overlap"] = monotone_up_to_overlap(report);
  return j;
}

McReport mc_from_json(const Json& j) {
  check_schema(j, "mc");
  McReport report;
  const Json& cfg = field(j, "config");
  McConfig& c = report.config;
  c.n = get<int>(cfg, "n");
  c.r = get<int>(cfg, "r");
  c.ell = get<int>(cfg, "ell");
  const std::string kind = get<std::string>(cfg, "grid_kind");
  if (kind != "c" && kind != "p") throw ParseError("grid_kind must be c or p");
  c.grid_kind = kind == "c" ? GridKind::Prefactor : GridKind::Probability;
  c.grid = get<std::vector<double>>(cfg, "grid");
  c.trials = get<int>(cfg, "trials");
  c.seed = get<std::uint64_t>(cfg, "seed");
  c.budget = get<std::uint64_t>(cfg, "budget");
  c.z = get<double>(cfg, "z");
  for (const Json& rj : field(j, "rows")) {
    McRow row;
    row.p = get<double>(rj, "p");
    if (!field(rj, "c").is_null()) row.c = get<double>(rj, "c");
    row.ramsey = get<int>(rj, "ramsey");
    row.not_ramsey = get<int>(rj, "not_ramsey");
    row.budget_exceeded = get<int>(rj, "budget_exceeded");
    row.interval = {get<double>(rj, "lo"), get<double>(rj, "hi")};
    report.rows.push_back(row);
  }
  return report;
}

Json verify_to_json(const VerifyReport& report) {
  Json j = header("verify");
  j["r"] = report.r;
  j["ell"] = report.ell;
  Json rows = Json::array();
  for (const VerifyRow& row : report.rows) {
    Json rj;
    rj["item"] = row.item;
    rj["lemma"] = row.lemma;
    rj["status"] = to_string(row.status);
    rj["detail"] = row.detail;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  j["any_fail"] = report.any_fail();
  j["any_budget"] = report.any_budget();
  j["exit_code"] = report.exit_code();
  return j;
}

VerifyReport verify_from_json(const Json& j) {
  check_schema(j, "verify");
  VerifyReport report;
  report.r = get<int>(j, "r");
  report.ell = get<int>(j, "ell");
  for (const Json& rj : field(j, "rows")) {
    VerifyRow row;
    row.item = get<std::string>(rj, "item");
    row.lemma = get<std::string>(rj, "lemma");
    row.status = enum_from(get<std::string>(rj, "status"), {RowStatus::Pass, RowStatus::Fail, RowStatus::Budget}, "row status");
    row.detail = get<std::string>(rj, "detail");
    report.rows.push_back(std::move(row));
  }
  return report;
}

Json out_to_json(const OutCollection& out) {
  Json j = header("out");
  j["n"] = out.n;
  j["step_budget"] = out.step_budget;
  j["size"] = out.size();
  Json entries = Json::array();
  for (const OutEntry& e : out.entries) {
    Json ej;
    ej["canonical_code"] = e.code;
    ej["class"] = to_string(e.tag);
    ej["first_input"] = e.first_input;
    ej["graph"] = graph_to_json(e.representative);
    entries.push_back(std::move(ej));
  }
  j["entries"] = std::move(entries);
  Json prov = Json::array();
  for (const auto& [name, code] : out.provenance) prov.push_back(Json{{"input", name}, {"canonical_code", code}});
  j["provenance"] = std::move(prov);
  return j;
}

OutCollection out_from_json(const Json& j) {
  check_schema(j, "out");
  OutCollection out;
  out.n = get<int>(j, "n");
  out.step_budget = get<int>(j, "step_budget");
  for (const Json& ej : field(j, "entries")) {
    OutEntry e;
    e.code = get<std::string>(ej, "canonical_code");
    e.tag = enum_from(get<std::string>(ej, "class"), {FingerprintTag::J1, FingerprintTag::J2, FingerprintTag::Unclassified}, "class");
    e.first_input = get<std::string>(ej, "first_input");
    e.representative = graph_from_json(field(ej, "graph"));
    if (hex_encode(canonical_code(e.representative)) != e.code) throw ParseError("out entry does not reproduce its code");
    out.entries.push_back(std::move(e));
  }
  for (const Json& pj : field(j, "provenance")) {
    out.provenance.emplace_back(get<std::string>(pj, "input"), get<std::string>(pj, "canonical_code"));
  }
  return out;
}

Json bound_to_json(const BoundReport& b) {
  Json j = header("bound");
  j["r"] = b.r;
  j["ell"] = b.ell;
  j["n"] = b.n;
  j["M"] = rational_to_json(b.m);
  j["epsilon"] = rational_to_json(b.epsilon);
  j["c"] = b.c;
  j["log2_n"] = b.log2_n;
  j["polylog_factor"] = b.polylog;
  j["n_pow_minus_epsilon"] = b.n_pow_eps;
  j["n_pow_minus_M"] = b.n_pow_m;
  j["bound"] = b.bound;
  j["out_size"] = b.out_size ? Json(*b.out_size) : Json(nullptr);
  return j;
}

BoundReport bound_from_json(const Json& j) {
  check_schema(j, "bound");
  BoundReport b;
  b.r = get<int>(j, "r");
  b.ell = get<int>(j, "ell");
  b.n = get<int>(j, "n");
  b.m = rational_from_json(field(j, "M"));
  b.epsilon = rational_from_json(field(j, "epsilon"));
  b.c = get<double>(j, "c");
  b.log2_n = get<double>(j, "log2_n");
  b.polylog = get<double>(j, "polylog_factor");
  b.n_pow_eps = get<double>(j, "n_pow_minus_epsilon");
  b.n_pow_m = get<double>(j, "n_pow_minus_M");
  b.bound = get<double>(j, "bound");
  if (!field(j, "out_size").is_null()) b.out_size = get<std::size_t>(j, "out_size");
  return b;
}

}  // namespace krcl
