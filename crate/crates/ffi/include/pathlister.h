#ifndef PATHLISTER_H
#define PATHLISTER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PlStatus {
  PL_STATUS_OK = 0,
  PL_STATUS_NULL_POINTER = 1,
  PL_STATUS_PARSE = 2,
  PL_STATUS_INVALID_VERTEX = 3,
  PL_STATUS_LIMIT_EXCEEDED = 4,
  PL_STATUS_INVALID_ARGUMENT = 5,
  PL_STATUS_PANIC = 6,
} PlStatus;

typedef enum PlAlgo {
  PL_ALGO_OPTIMAL = 0,
  PL_ALGO_JOHNSON = 1,
  // Exhaustive search; graphs of at most 16 vertices.
  PL_ALGO_BRUTE = 2,
} PlAlgo;

// Opaque graph handle.
typedef struct PlGraph PlGraph;

// Receives one solution: `len` vertex ids, valid only during the call.
// Return 0 to continue, anything else to stop the listing.
typedef int (*PlSolutionCallback)(const size_t *vertices, size_t len, void *user_data);

// Counters of one listing. Recursion counters are zero for the brute
// engine.
typedef struct PlStats {
  uint64_t solutions;
  uint64_t leaves;
  uint64_t unary_nodes;
  uint64_t binary_nodes;
  uint64_t spines;
  uint64_t work_units;
  // Total solution length in edges.
  uint64_t output_size;
  // The callback asked to stop.
  bool truncated;
} PlStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. Valid until
// the next call into this library on the same thread.
const char *pl_last_error(void);

// Library version as a static NUL-terminated string.
const char *pl_version(void);

// Parses the edge-list format: a `n m` header, then one `u v` line per
// edge; `#` starts a comment line.
//
// # Safety
// `text` must be NULL or a NUL-terminated string; `out` must be NULL or
// writable.
enum PlStatus pl_graph_parse(const char *text, struct PlGraph **out);

// Builds a graph on `n` vertices from `m` pairs stored flat in `edges`
// (`2 * m` ids). Duplicate edges are merged.
//
// # Safety
// `edges` must point to `2 * m` readable ids (it may be NULL when
// `m == 0`); `out` must be NULL or writable.
enum PlStatus pl_graph_from_edges(size_t n, const size_t *edges, size_t m, struct PlGraph **out);

// Complete tripartite graph with parts of size `n / 3`.
//
// # Safety
// `out` must be NULL or writable.
enum PlStatus pl_graph_tripartite(size_t n, struct PlGraph **out);

// Diamond graph with parameter `k` (`2k + 3` vertices).
//
// # Safety
// `out` must be NULL or writable.
enum PlStatus pl_graph_diamond(size_t k, struct PlGraph **out);

// G(n, p), deterministic in `seed`.
//
// # Safety
// `out` must be NULL or writable.
enum PlStatus pl_graph_random(size_t n, double p, uint64_t seed, struct PlGraph **out);

// Releases a graph. NULL is ignored.
//
// # Safety
// `g` must be NULL or a handle from this library not yet freed.
void pl_graph_free(struct PlGraph *g);

// Vertex count, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live handle.
size_t pl_graph_vertex_count(const struct PlGraph *g);

// Edge count, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live handle.
size_t pl_graph_edge_count(const struct PlGraph *g);

// Lists every simple path from `s` to `t`. `callback` may be NULL to
// only count; `stats` may be NULL.
//
// # Safety
// `g` must be a live handle; `stats` must be NULL or writable; the
// callback must not unwind.
enum PlStatus pl_list_st_paths(const struct PlGraph *g,
                               size_t s,
                               size_t t,
                               PlSolutionCallback callback,
                               void *user_data,
                               struct PlStats *stats);

// Lists every simple cycle in canonical form (smallest vertex first,
// then its smaller neighbour on the cycle). `algo` is a `PlAlgo` value.
//
// # Safety
// As for [`pl_list_st_paths`].
enum PlStatus pl_list_cycles(const struct PlGraph *g,
                             uint32_t algo,
                             PlSolutionCallback callback,
                             void *user_data,
                             struct PlStats *stats);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATHLISTER_H */
