/* SPDX-License-Identifier: Apache-2.0 */

#ifndef TRANSCLUST_H
#define TRANSCLUST_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum TcStatus {
  TC_STATUS_OK = 0,
  TC_STATUS_NULL_POINTER = 1,
  TC_STATUS_INVALID_ARGUMENT = 2,
  TC_STATUS_NODE_OUT_OF_RANGE = 3,
  TC_STATUS_PARSE_ERROR = 4,
  TC_STATUS_IO_ERROR = 5,
  TC_STATUS_BUFFER_TOO_SMALL = 6,
  TC_STATUS_PANIC = 7,
} TcStatus;

/**
 * Opaque graph handle.
 */
typedef struct TcGraph TcGraph;

/**
 * Opaque edge-similarity handle.
 */
typedef struct TcSimilarity TcSimilarity;

/**
 * Plain-data copy of the graph statistics.
 */
typedef struct TcGraphStats {
  size_t n;
  size_t m;
  uint64_t triangles;
  uint64_t two_stars;
  double transitivity;
  double avg_clustering;
  double mean_degree;
} TcGraphStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *tc_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tc_version(void);

/**
 * Builds a graph on nodes `0..n` from `edge_count` pairs stored flat in
 * `edges` (`u0, v0, u1, v1, ...`). Self-loops and duplicates are dropped.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (may be NULL when
 * `edge_count` is 0); `out` must be writable.
 */
enum TcStatus tc_graph_from_edges(size_t n,
                                  const size_t *edges,
                                  size_t edge_count,
                                  struct TcGraph **out);

/**
 * Parses an edge list held in a NUL-terminated string.
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum TcStatus tc_graph_parse(const char *text, struct TcGraph **out);

/**
 * Loads an edge-list file.
 *
 * # Safety
 * `path` must be a valid C string; `out` must be writable.
 */
enum TcStatus tc_graph_load(const char *path, struct TcGraph **out);

/**
 * Releases a graph. NULL is ignored.
 *
 * # Safety
 * `graph` must come from a `tc_graph_*` constructor and not be freed twice.
 */
void tc_graph_free(struct TcGraph *graph);

/**
 * Node count, 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
size_t tc_graph_node_count(const struct TcGraph *graph);

/**
 * Edge count, 0 for NULL.
 *
 * # Safety
 * `graph` must be NULL or a live handle.
 */
size_t tc_graph_edge_count(const struct TcGraph *graph);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_graph_degree(const struct TcGraph *graph, size_t node, size_t *out);

/**
 * Id of `node` in the file the graph was loaded from.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_graph_original_id(const struct TcGraph *graph, size_t node, uint64_t *out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_graph_common_neighbors(const struct TcGraph *graph,
                                        size_t i,
                                        size_t j,
                                        size_t *out);

/**
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_graph_stats(const struct TcGraph *graph, struct TcGraphStats *out);

/**
 * Triangle-count similarity.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_similarity_triangle(const struct TcGraph *graph, struct TcSimilarity **out);

/**
 * Regularized-Laplacian similarity. A NaN `tau` selects the mean degree.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_similarity_laplacian(const struct TcGraph *graph,
                                      double tau,
                                      struct TcSimilarity **out);

/**
 * Releases a similarity. NULL is ignored.
 *
 * # Safety
 * `sim` must come from a `tc_similarity_*` constructor and not be freed twice.
 */
void tc_similarity_free(struct TcSimilarity *sim);

/**
 * Weight of edge `(u, v)`; `TC_STATUS_INVALID_ARGUMENT` when it is not an edge.
 *
 * # Safety
 * `sim` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_similarity_weight(const struct TcSimilarity *sim, size_t u, size_t v, double *out);

/**
 * All edge weights, in edge order (`u < v`, sorted by `(u, v)`).
 *
 * # Safety
 * `weights` must be valid for `capacity` writes; `len` must be writable.
 */
enum TcStatus tc_similarity_weights(const struct TcSimilarity *sim,
                                    double *weights,
                                    size_t capacity,
                                    size_t *len);

/**
 * Local cluster of `seed` at threshold `cut`, as sorted node ids.
 *
 * # Safety
 * `nodes` must be valid for `capacity` writes; `len` must be writable.
 */
enum TcStatus tc_local_trans(const struct TcSimilarity *sim,
                             size_t seed,
                             double cut,
                             size_t *nodes,
                             size_t capacity,
                             size_t *len);

/**
 * Global clustering at `cut`: one cluster label per node, labels numbered by
 * smallest member. `cluster_count` receives the number of clusters.
 *
 * # Safety
 * `labels` must be valid for `capacity` writes; `len` and `cluster_count`
 * must be writable.
 */
enum TcStatus tc_global_trans(const struct TcSimilarity *sim,
                              double cut,
                              size_t *labels,
                              size_t capacity,
                              size_t *len,
                              size_t *cluster_count);

/**
 * Checks that the symmetric and random-walk Laplacian similarities agree.
 * A NaN `tau` selects the mean degree.
 *
 * # Safety
 * `graph` must be a live handle; `out` must be writable.
 */
enum TcStatus tc_random_walk_equivalence_check(const struct TcGraph *graph, double tau, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TRANSCLUST_H */
