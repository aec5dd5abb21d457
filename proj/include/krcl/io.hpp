#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "krcl/experiments.hpp"
#include "krcl/hypergraph.hpp"
#include "krcl/hypertree.hpp"
#include "krcl/solver.hpp"

namespace krcl {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError.
Json parse_json(std::string_view text);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

std::string hex_encode(std::string_view bytes);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json edges_to_json(const std::vector<Edge>& edges);
std::vector<Edge> edges_from_json(const Json& j, int n);

/// {n, edges:[[u,v]...]}
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// Hex canonical code of the graph spanned by the subgraph's vertices.
std::string fingerprint_code(const Subgraph& g);

Json hyperedge_to_json(const Hyperedge& e);
/// Checks the edge set is an r-clique or an ell-cycle of `host`.
Hyperedge hyperedge_from_json(const Json& j, const Graph& host, const PairParams& pp);

/// Interchange document {schema_version, type, r, ell, n, host, hyperedges}.
Json hypergraph_to_json(const Hypergraph& h, const PairParams& pp);
/// Accepts documents without `host` (the host is then the underlying graph
/// on n vertices) and rejects r/ell that disagree with `pp`.
Hypergraph hypergraph_from_json(const Json& j, const PairParams& pp);

Json densities_to_json(const PairParams& pp, const std::optional<Graph>& g);
Json enum_to_json(const Hypergraph& h);
Json arrow_to_json(const ArrowDecision& d);

Json trace_to_json(const HyperTreeTrace& trace, const PairParams& pp);
HyperTreeTrace trace_from_json(const Json& j, const PairParams& pp);
Json trace_audit_to_json(const TraceAudit& audit);

std::string mc_to_csv(const McReport& report);
/// Rows of a CSV produced by mc_to_csv; c is not part of the CSV.
std::vector<McRow> mc_rows_from_csv(std::string_view csv);
Json mc_to_json(const McReport& report);
McReport mc_from_json(const Json& j);

Json verify_to_json(const VerifyReport& report);
VerifyReport verify_from_json(const Json& j);

Json out_to_json(const OutCollection& out);
OutCollection out_from_json(const Json& j);

Json bound_to_json(const BoundReport& report);
BoundReport bound_from_json(const Json& j);

}  // namespace krcl
