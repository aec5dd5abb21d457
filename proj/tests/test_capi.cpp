#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "krcl/krcl.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  krcl_string_free(s);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("graph handles") {
  krcl_graph* g = nullptr;
  REQUIRE(krcl_graph_parse("4 3\n0 1\n1 2\n2 3\n", &g) == KRCL_OK);
  int n = 0, m = 0;
  CHECK(krcl_graph_order(g, &n) == KRCL_OK);
  CHECK(krcl_graph_size(g, &m) == KRCL_OK);
  CHECK(n == 4);
  CHECK(m == 3);
  char* text = nullptr;
  CHECK(krcl_graph_to_text(g, &text) == KRCL_OK);
  CHECK(take(text) == "4 3\n0 1\n1 2\n2 3\n");
  krcl_graph_free(g);

  krcl_graph* bad = nullptr;
  CHECK(krcl_graph_parse("3 2\n0 1\n0 1\n", &bad) == KRCL_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(krcl_last_error()).size() > 0);
  CHECK(krcl_graph_load("/nonexistent/graph.txt", &bad) == KRCL_ERR_IO);
  CHECK(krcl_graph_order(nullptr, &n) == KRCL_ERR_ARGUMENT);
  krcl_graph_free(nullptr);

  CHECK(std::string(krcl_status_name(KRCL_ERR_BUDGET)).size() > 0);
  CHECK(std::string(krcl_version()).size() > 0);
}

TEST_CASE("densities, enumeration and arrow") {
  krcl_graph* k4 = nullptr;
  REQUIRE(krcl_graph_complete(4, &k4) == KRCL_OK);
  char* out = nullptr;
  REQUIRE(krcl_densities_json(4, 4, k4, &out) == KRCL_OK);
  const std::string d = take(out);
  CHECK(d.find("\"schema_version\"") != std::string::npos);
  CHECK(d.find("\"m2_pair\"") != std::string::npos);
  CHECK(krcl_densities_json(1, 4, nullptr, &out) != KRCL_OK);

  REQUIRE(krcl_enum_json(4, 4, k4, &out) == KRCL_OK);
  CHECK(take(out).find("\"cycles\": 3") != std::string::npos);

  krcl_arrow_outcome outcome = KRCL_UNDECIDED;
  REQUIRE(krcl_arrow_json(4, 4, k4, 0, &out, &outcome) == KRCL_OK);
  CHECK(outcome == KRCL_NOT_RAMSEY);
  take(out);

  krcl_graph* k6 = nullptr;
  REQUIRE(krcl_graph_complete(6, &k6) == KRCL_OK);
  REQUIRE(krcl_arrow_json(3, 3, k6, 0, &out, &outcome) == KRCL_OK);
  CHECK(outcome == KRCL_RAMSEY);
  take(out);

  krcl_hypergraph* crit = nullptr;
  REQUIRE(krcl_find_crit(3, 3, k6, 0, -1, &crit) == KRCL_OK);
  REQUIRE(crit != nullptr);
  size_t size = 0;
  CHECK(krcl_hypergraph_size(crit, &size) == KRCL_OK);
  CHECK(size > 0);
  krcl_hypergraph_free(crit);

  krcl_hypergraph* none = nullptr;
  REQUIRE(krcl_find_crit(4, 4, k4, 0, -1, &none) == KRCL_OK);
  CHECK(none == nullptr);
  krcl_graph_free(k6);
  krcl_graph_free(k4);
}

TEST_CASE("hypertree through the C interface") {
  const std::string doc = slurp(std::string(KRCL_TEST_DATA) + "/hstar_k10.json");
  krcl_hypergraph* h = nullptr;
  REQUIRE(krcl_hypergraph_from_json(doc.c_str(), 4, 4, &h) == KRCL_OK);
  CHECK(krcl_hypergraph_from_json(doc.c_str(), 5, 4, &h) == KRCL_ERR_ARGUMENT);

  krcl_trace* t = nullptr;
  REQUIRE(krcl_hypertree_run(h, KRCL_MODE_SINGLE, 0, nullptr, 0, &t) == KRCL_OK);
  char* out = nullptr;
  int ok = 0;
  REQUIRE(krcl_trace_audited_json(t, h, &out, &ok) == KRCL_OK);
  CHECK(ok == 1);
  const std::string doc2 = take(out);
  CHECK(doc2.find("\"audit\"") != std::string::npos);
  CHECK(doc2.find("\"type\": \"trace\"") != std::string::npos);

  REQUIRE(krcl_trace_fingerprint_code(t, &out) == KRCL_OK);
  const std::string code = take(out);
  CHECK(doc2.find(code) != std::string::npos);

  // A second run gives the same document.
  krcl_trace* t2 = nullptr;
  REQUIRE(krcl_hypertree_run(h, KRCL_MODE_SINGLE, 0, nullptr, 0, &t2) == KRCL_OK);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(krcl_trace_to_json(t, &a) == KRCL_OK);
  REQUIRE(krcl_trace_to_json(t2, &b) == KRCL_OK);
  CHECK(take(a) == take(b));
  krcl_trace_free(t2);
  krcl_trace_free(t);
  krcl_hypergraph_free(h);
}

TEST_CASE("experiments through the C interface") {
  char* csv = nullptr;
  char* json = nullptr;
  int incomplete = -1;
  REQUIRE(krcl_mc_run(R"({"n":8,"r":4,"ell":4,"p_grid":[0,1],"trials":3,"seed":1,"budget":1000000})", 2, &csv, &json, &incomplete) ==
          KRCL_OK);
  const std::string c = take(csv);
  CHECK(c.rfind("p,ramsey,not_ramsey,budget_exceeded,lo,hi\n", 0) == 0);
  CHECK(take(json).find("\"type\": \"mc\"") != std::string::npos);
  CHECK(incomplete == 0);
  CHECK(krcl_mc_run("{", 1, &csv, &json, &incomplete) == KRCL_ERR_PARSE);

  char* out = nullptr;
  int exit_code = -1;
  REQUIRE(krcl_verify_corpus((std::string(KRCL_TEST_DATA) + "/corpus_bad").c_str(), 4, 4, 0, &out, &exit_code) == KRCL_OK);
  CHECK(exit_code == 2);
  take(out);

  REQUIRE(krcl_out_collect((std::string(KRCL_TEST_DATA) + "/corpus_out").c_str(), 4, 4, 1024, KRCL_MODE_SINGLE, &out) == KRCL_OK);
  CHECK(take(out).find("\"size\": 1") != std::string::npos);

  REQUIRE(krcl_bound_report(4, 4, 1000, &out) == KRCL_OK);
  CHECK(take(out).find("\"bound\"") != std::string::npos);
  CHECK(krcl_bound_report(4, 4, 1, &out) == KRCL_ERR_ARGUMENT);
}
