#ifndef KRCL_KRCL_H
#define KRCL_KRCL_H

/* C interface to the krcl library. Every call returns a krcl_status; on
 * failure krcl_last_error() describes it (per thread, valid until the next
 * failing call on that thread). Strings handed out by the library are freed
 * with krcl_string_free, handles with their matching *_free function. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KRCL_API __declspec(dllexport)
#else
#define KRCL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum krcl_status {
  KRCL_OK = 0,
  KRCL_ERR_ARGUMENT = 1,
  KRCL_ERR_PARSE = 2,
  KRCL_ERR_DOMAIN = 3,
  KRCL_ERR_PRECONDITION = 4,
  KRCL_ERR_LEMMA = 5,
  KRCL_ERR_BUDGET = 6,
  KRCL_ERR_OVERFLOW = 7,
  KRCL_ERR_IO = 8,
  KRCL_ERR_INTERNAL = 9
} krcl_status;

typedef enum krcl_mode { KRCL_MODE_SINGLE = 0, KRCL_MODE_BATCH = 1 } krcl_mode;

typedef struct krcl_graph krcl_graph;
typedef struct krcl_hypergraph krcl_hypergraph;
typedef struct krcl_trace krcl_trace;

KRCL_API const char* krcl_version(void);
KRCL_API const char* krcl_last_error(void);
KRCL_API const char* krcl_status_name(krcl_status status);
KRCL_API void krcl_string_free(char* s);

/* Graphs in the "n m" + edge lines text format. */
KRCL_API krcl_status krcl_graph_parse(const char* text, krcl_graph** out);
KRCL_API krcl_status krcl_graph_load(const char* path, krcl_graph** out);
KRCL_API krcl_status krcl_graph_complete(int n, krcl_graph** out);
KRCL_API krcl_status krcl_graph_order(const krcl_graph* g, int* out);
KRCL_API krcl_status krcl_graph_size(const krcl_graph* g, int* out);
KRCL_API krcl_status krcl_graph_to_text(const krcl_graph* g, char** out);
KRCL_API void krcl_graph_free(krcl_graph* g);

/* JSON {m2_F, m2_H, m2_pair, epsilon, lambda_clique, lambda?}; g may be NULL. */
KRCL_API krcl_status krcl_densities_json(int r, int ell, const krcl_graph* g, char** out);
/* JSON {cliques, cycles, hypervertices}. */
KRCL_API krcl_status krcl_enum_json(int r, int ell, const krcl_graph* g, char** out);
typedef enum krcl_arrow_outcome { KRCL_NOT_RAMSEY = 0, KRCL_RAMSEY = 1, KRCL_UNDECIDED = 2 } krcl_arrow_outcome;

/* JSON {is_ramsey, status, witness?, nodes}. budget 0 means the default.
 * A budget stop is not an error: it is reported through *outcome (may be
 * NULL) and the JSON status. */
KRCL_API krcl_status krcl_arrow_json(int r, int ell, const krcl_graph* g, uint64_t budget, char** out, krcl_arrow_outcome* outcome);

/* Critical sub-hypergraph of a Ramsey graph; *out is NULL when g is not
 * Ramsey. seed < 0 keeps the deterministic deletion order. */
KRCL_API krcl_status krcl_find_crit(int r, int ell, const krcl_graph* g, uint64_t budget, int64_t seed, krcl_hypergraph** out);
KRCL_API krcl_status krcl_hypergraph_from_json(const char* json, int r, int ell, krcl_hypergraph** out);
KRCL_API krcl_status krcl_hypergraph_to_json(const krcl_hypergraph* h, char** out);
KRCL_API krcl_status krcl_hypergraph_size(const krcl_hypergraph* h, size_t* out);
KRCL_API void krcl_hypergraph_free(krcl_hypergraph* h);

/* n <= 0 uses the host order. peers are only read in batch mode. */
KRCL_API krcl_status krcl_hypertree_run(const krcl_hypergraph* h, krcl_mode mode, int n, const krcl_hypergraph* const* peers,
                                        size_t peer_count, krcl_trace** out);
KRCL_API krcl_status krcl_trace_to_json(const krcl_trace* t, char** out);
/* Audit of the trace against h; *ok is 1 when every check passes. */
KRCL_API krcl_status krcl_trace_audit_json(const krcl_trace* t, const krcl_hypergraph* h, char** out, int* ok);
/* Trace document with an embedded "audit" object. */
KRCL_API krcl_status krcl_trace_audited_json(const krcl_trace* t, const krcl_hypergraph* h, char** out, int* ok);
/* Hex canonical code of the trace's fingerprint. */
KRCL_API krcl_status krcl_trace_fingerprint_code(const krcl_trace* t, char** out);
KRCL_API void krcl_trace_free(krcl_trace* t);

/* config_json: {n, r, ell, c_grid | p_grid, trials, seed, budget, z?}.
 * Either output pointer may be NULL. *budget_incomplete is set when any
 * trial ran out of budget. */
KRCL_API krcl_status krcl_mc_run(const char* config_json, int threads, char** csv_out, char** json_out, int* budget_incomplete);
/* *exit_code: 0 all pass, 2 some lemma failed, 3 only budget gaps. */
KRCL_API krcl_status krcl_verify_corpus(const char* dir, int r, int ell, uint64_t budget, char** json_out, int* exit_code);
KRCL_API krcl_status krcl_out_collect(const char* dir, int r, int ell, int n, krcl_mode mode, char** json_out);
KRCL_API krcl_status krcl_bound_report(int r, int ell, int n, char** json_out);

#ifdef __cplusplus
}
#endif

#endif
