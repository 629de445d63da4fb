#ifndef COMMCENT_H
#define COMMCENT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes; the non-zero values match the command-line exit codes.
 */
typedef enum {
  CC_STATUS_OK = 0,
  CC_STATUS_MISMATCH = 1,
  CC_STATUS_INVALID_ARGUMENT = 2,
  CC_STATUS_INCONSISTENT = 3,
  CC_STATUS_IO = 4,
  CC_STATUS_BUDGET_EXHAUSTED = 5,
  CC_STATUS_NULL_POINTER = 6,
  CC_STATUS_PANIC = 7,
} CcStatus;

typedef struct CcGraph CcGraph;

typedef struct CcGroup CcGroup;

typedef struct CcJoinSpec CcJoinSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *cc_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void cc_string_free(char *s);

/**
 * Builds a group from a family string such as `heis:q=9`.
 *
 * # Safety
 * `family` must be a NUL-terminated string; `out` must be writable.
 */
CcStatus cc_group_build(const char *family, size_t max_order, CcGroup **out);

/**
 * # Safety
 * `g` must come from `cc_group_build` or be null.
 */
void cc_group_free(CcGroup *g);

/**
 * Group order, or 0 for a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
size_t cc_group_order(const CcGroup *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_group_mul(const CcGroup *g, size_t x, size_t y, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_group_power(const CcGroup *g, size_t x, uint64_t k, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_group_element_order(const CcGroup *g, size_t x, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_group_center_size(const CcGroup *g, size_t *out);

/**
 * Number of distinct element centralizers.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_group_cent_count(const CcGroup *g, size_t *out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_group_class_count(const CcGroup *g, size_t *out);

/**
 * Runs one verification (`thm1`, `thm2` or `tables`) on the exemplar for
 * prime `p`; `nonabelian` selects the quotient kind and `z_order` = 0 picks
 * the default center order. Writes the JSON report and whether it matched.
 *
 * # Safety
 * `check` must be a NUL-terminated string; `json` and `matched` must be
 * writable.
 */
CcStatus cc_verify_report_json(const char *check,
                               size_t p,
                               bool nonabelian,
                               size_t z_order,
                               char **json,
                               bool *matched);

/**
 * Commuting conjugacy class graph of `g`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_ccc_graph(const CcGroup *g, CcGraph **out);

/**
 * # Safety
 * `g` must come from this library or be null.
 */
void cc_graph_free(CcGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t cc_graph_vertex_count(const CcGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t cc_graph_edge_count(const CcGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
CcStatus cc_graph_has_edge(const CcGraph *g, size_t u, size_t v, bool *out);

/**
 * # Safety
 * `g` must be a live handle; `name` a NUL-terminated string; `out` writable.
 */
CcStatus cc_graph_to_dot(const CcGraph *g, const char *name, char **out);

/**
 * Join shape predicted for an abelian central quotient.
 *
 * # Safety
 * `out` must be writable.
 */
CcStatus cc_join_spec_m1(size_t p, size_t z_order, CcJoinSpec **out);

/**
 * Join shape predicted for a non-abelian central quotient.
 *
 * # Safety
 * `out` must be writable.
 */
CcStatus cc_join_spec_m2(size_t p, size_t z_order, CcJoinSpec **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void cc_join_spec_free(CcJoinSpec *s);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
CcStatus cc_join_spec_to_json(const CcJoinSpec *s, char **out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
CcStatus cc_join_realize(const CcJoinSpec *s, CcGraph **out);

/**
 * Whether `g` has the join shape `s`; `budget` = 0 uses the default node
 * budget.
 *
 * # Safety
 * `g` and `s` must be live handles; `out` must be writable.
 */
CcStatus cc_graph_verify_join(const CcGraph *g, const CcJoinSpec *s, uint64_t budget, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMMCENT_H */
