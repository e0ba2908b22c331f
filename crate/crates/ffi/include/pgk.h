#ifndef PGK_H
#define PGK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Graph built from a group.
typedef enum PgkGraphKind {
  PGK_GRAPH_KIND_POW = 0,
  PGK_GRAPH_KIND_EPOW = 1,
  PGK_GRAPH_KIND_DPOW = 2,
  PGK_GRAPH_KIND_CDPOW = 3,
} PgkGraphKind;

// Which graph an undirected input is assumed to be.
typedef enum PgkSource {
  PGK_SOURCE_POWER = 0,
  PGK_SOURCE_ENHANCED = 1,
} PgkSource;

typedef enum PgkStage {
  PGK_STAGE_R4 = 0,
  PGK_STAGE_R3 = 1,
  PGK_STAGE_R2 = 2,
  PGK_STAGE_R1 = 3,
  PGK_STAGE_CDPOW = 4,
  PGK_STAGE_DPOW = 5,
} PgkStage;

typedef enum PgkStatus {
  PGK_STATUS_OK = 0,
  PGK_STATUS_NULL_POINTER = 1,
  PGK_STATUS_INVALID_UTF8 = 2,
  PGK_STATUS_PARSE = 3,
  PGK_STATUS_IO = 4,
  PGK_STATUS_WRONG_GRAPH_TYPE = 5,
  PGK_STATUS_PIPELINE = 6,
  PGK_STATUS_NOT_NILPOTENT = 7,
  PGK_STATUS_PANIC = 8,
} PgkStatus;

// Opaque graph, directed or undirected.
typedef struct PgkGraph PgkGraph;

// Opaque finite group.
typedef struct PgkGroup PgkGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL after a success.
// The pointer stays valid until the next `pgk_*` call on the same thread.
const char *pgk_last_error_message(void);

// Parses a group spec such as `Z12`, `Q8`, `Z2xZ6` or `file:path`.
//
// # Safety
// `spec` must be a NUL-terminated string and `out` a writable pointer.
enum PgkStatus pgk_group_parse(const char *spec, struct PgkGroup **out);

// # Safety
// `group` must be NULL or a handle from `pgk_group_parse` not yet freed.
void pgk_group_free(struct PgkGroup *group);

// Order of the group, 0 for a NULL handle.
//
// # Safety
// `group` must be NULL or a live group handle.
uintptr_t pgk_group_order(const struct PgkGroup *group);

// # Safety
// `group` must be a live group handle and `out` a writable pointer.
enum PgkStatus pgk_graph_from_group(const struct PgkGroup *group,
                                    enum PgkGraphKind kind,
                                    struct PgkGraph **out);

// Parses a graph in the text format written by `pgk_graph_to_string`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum PgkStatus pgk_graph_parse(const char *text, struct PgkGraph **out);

// Writes the graph's text form into a new string; free it with `pgk_string_free`.
//
// # Safety
// `graph` must be a live graph handle and `out` a writable pointer.
enum PgkStatus pgk_graph_to_string(const struct PgkGraph *graph, char **out);

// # Safety
// `graph` must be NULL or a graph handle not yet freed.
void pgk_graph_free(struct PgkGraph *graph);

// # Safety
// `graph` must be NULL or a live graph handle.
uintptr_t pgk_graph_vertex_count(const struct PgkGraph *graph);

// # Safety
// `graph` must be NULL or a live graph handle.
bool pgk_graph_is_directed(const struct PgkGraph *graph);

// # Safety
// `s` must be NULL or a string returned by this library not yet freed.
void pgk_string_free(char *s);

// Finds the vertices generating maximal cyclic subgroups, one per class of
// closed twins. The indices are written to a new buffer of `*out_len`
// entries; release it with `pgk_indices_free`.
//
// # Safety
// `graph` must be a live graph handle; `out` and `out_len` must be writable.
enum PgkStatus pgk_detect(const struct PgkGraph *graph,
                          enum PgkSource source,
                          uintptr_t **out,
                          uintptr_t *out_len);

// # Safety
// `ptr` and `len` must come from one `pgk_detect` call, or `ptr` is NULL.
void pgk_indices_free(uintptr_t *ptr, uintptr_t len);

// Rebuilds the directed power graph (or an intermediate stage) from an
// undirected power graph or enhanced power graph.
//
// # Safety
// `graph` must be a live graph handle and `out` a writable pointer.
enum PgkStatus pgk_reconstruct(const struct PgkGraph *graph,
                               enum PgkSource source,
                               enum PgkStage stage,
                               struct PgkGraph **out);

// Decides isomorphism of two graphs of nilpotent groups. `kind` must be
// `Pow`, `Epow` or `Dpow`.
//
// # Safety
// Both handles must be live and `out` writable.
enum PgkStatus pgk_iso_nilpotent(const struct PgkGraph *first,
                                 const struct PgkGraph *second,
                                 enum PgkGraphKind kind,
                                 bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PGK_H */
