#ifndef NATGVD_NATGVD_H
#define NATGVD_NATGVD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NATGVD_API __declspec(dllexport)
#else
#define NATGVD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum natgvd_status {
  NATGVD_OK = 0,
  NATGVD_ERR_UNBALANCED_DELIMITERS,
  NATGVD_ERR_MULTIPLE_FUNCTIONS,
  NATGVD_ERR_DIRECTIVE_IN_BODY,
  NATGVD_ERR_NOT_A_FUNCTION,
  NATGVD_ERR_OVERLAPPING_EDITS,
  NATGVD_ERR_SPAN_OUT_OF_BOUNDS,
  NATGVD_ERR_INAPPLICABLE,
  NATGVD_ERR_BUDGET_EXCEEDED,
  NATGVD_ERR_REPLAY_MISMATCH,
  NATGVD_ERR_UNRESOLVED_GOTO,
  NATGVD_ERR_DETECTOR_SPAWN_FAILURE,
  NATGVD_ERR_PROTOCOL_VIOLATION,
  NATGVD_ERR_TIMEOUT,
  NATGVD_ERR_COMPILER_SPAWN_FAILURE,
  NATGVD_ERR_COMPILE_FAILURE,
  NATGVD_ERR_EXECUTION_TIMEOUT,
  NATGVD_ERR_NOT_DRIVER_COMPATIBLE,
  NATGVD_ERR_EMPTY_REPORT,
  NATGVD_ERR_NO_TRUE_POSITIVES,
  NATGVD_ERR_MALFORMED_INPUT,
  NATGVD_ERR_STRICT_CHECK_FAILED,
  NATGVD_ERR_IO,
  NATGVD_ERR_INVALID_ARGUMENT,
  NATGVD_ERR_INTERNAL
} natgvd_status;

/* Library version string, e.g. "0.1.0". */
NATGVD_API const char* natgvd_version(void);

/* Name of a status code, e.g. "ProtocolViolation". */
NATGVD_API const char* natgvd_status_name(natgvd_status status);

/* Process exit code for a status: 0 success, 1 usage, 2 data error,
   3 external-process error. */
NATGVD_API int natgvd_status_exit_code(natgvd_status status);

/* Message of the last failed call on this thread ("" when none). */
NATGVD_API const char* natgvd_last_error(void);

/* Strings returned as char* are owned by the caller. */
NATGVD_API void natgvd_string_free(char* s);

/* ---- parsing ---------------------------------------------------------- */

typedef struct natgvd_ast natgvd_ast;

NATGVD_API natgvd_status natgvd_parse(const char* text, size_t length, natgvd_ast** out);
NATGVD_API void natgvd_ast_free(natgvd_ast* ast);
NATGVD_API size_t natgvd_ast_node_count(const natgvd_ast* ast);
NATGVD_API const char* natgvd_ast_function_name(const natgvd_ast* ast);

/* ---- variant generation ---------------------------------------------- */

/* Rule bits follow this order: assign-split, compound-assign-split,
   while-to-for, for-to-while, cond-negate, cond-split-and, cond-split-or,
   cond-reorder. */
#define NATGVD_RULE_COUNT 8
#define NATGVD_ALL_RULES 0xffu

#define NATGVD_MODE_SINGLE 1u
#define NATGVD_MODE_MULTI_LOCATION 2u
#define NATGVD_MODE_MULTI_RULE 4u

typedef struct natgvd_generate_options {
  uint32_t rules;
  uint32_t modes;
  int max_depth;
  size_t budget;
} natgvd_generate_options;

NATGVD_API void natgvd_generate_options_init(natgvd_generate_options* options);

/* Bit index of a rule given either spelling ("cond-reorder" or
   "CondReorder"), or -1. */
NATGVD_API int natgvd_rule_index(const char* name);
/* Flag spelling of a rule ("cond-reorder"), or "" when out of range. */
NATGVD_API const char* natgvd_rule_name(int index);

typedef struct natgvd_variants natgvd_variants;

NATGVD_API natgvd_status natgvd_generate(const char* text, const natgvd_generate_options* options,
                                         natgvd_variants** out);
NATGVD_API void natgvd_variants_free(natgvd_variants* variants);
NATGVD_API size_t natgvd_variants_count(const natgvd_variants* variants);
NATGVD_API const char* natgvd_variant_text(const natgvd_variants* variants, size_t i);
/* {"rules": [...], "sites": [...], "steps": [...]} for variant i. */
NATGVD_API const char* natgvd_variant_provenance(const natgvd_variants* variants, size_t i);

/* ---- metrics ---------------------------------------------------------- */

typedef struct natgvd_metrics {
  size_t loc;
  double halstead_volume;
  int cyclomatic;
  double avg_cpg_degree;
  size_t edit_distance;
  int has_loc_delta, has_volume_delta, has_cyclomatic_delta, has_avg_degree_delta;
  double loc_delta, volume_delta, cyclomatic_delta, avg_degree_delta;
} natgvd_metrics;

NATGVD_API natgvd_status natgvd_measure(const char* reference, const char* variant,
                                        natgvd_metrics* out);
NATGVD_API size_t natgvd_levenshtein(const char* a, size_t a_len, const char* b, size_t b_len);

/* ---- code property graph --------------------------------------------- */

typedef struct natgvd_cpg natgvd_cpg;

typedef struct natgvd_cpg_stats {
  size_t nodes;
  size_t ast_nodes;
  size_t cfg_nodes;
  size_t ast_edges;
  size_t cfg_edges;
  size_t duc_edges;
  double avg_degree;
} natgvd_cpg_stats;

NATGVD_API natgvd_status natgvd_cpg_build(const char* text, natgvd_cpg** out);
NATGVD_API void natgvd_cpg_free(natgvd_cpg* cpg);
NATGVD_API void natgvd_cpg_get_stats(const natgvd_cpg* cpg, natgvd_cpg_stats* out);
NATGVD_API char* natgvd_cpg_dot(const natgvd_cpg* cpg);
NATGVD_API char* natgvd_cpg_json(const natgvd_cpg* cpg);

/* ---- batch commands --------------------------------------------------- */

typedef struct natgvd_config natgvd_config;

NATGVD_API natgvd_config* natgvd_config_new(void);
NATGVD_API void natgvd_config_free(natgvd_config* config);

/* Sets a run option by its command-line name without dashes, e.g.
   ("input", "corpus.jsonl"), ("rules", "cond-reorder,cond-negate"),
   ("modes", "single,multi-rule"), ("strict", "true"). */
NATGVD_API natgvd_status natgvd_config_set(natgvd_config* config, const char* key,
                                           const char* value);

/* Resolved configuration as JSON (caller frees). */
NATGVD_API char* natgvd_config_json(const natgvd_config* config);

/* command: transform, attack, metrics, graphdiff or validate. */
NATGVD_API natgvd_status natgvd_run(const char* command, const natgvd_config* config);

#ifdef __cplusplus
}
#endif

#endif
