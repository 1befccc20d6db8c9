#ifndef WALKNET_H
#define WALKNET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum WnStatus {
  WN_STATUS_OK = 0,
  WN_STATUS_INVALID_INPUT = 1,
  WN_STATUS_DISCONNECTED = 2,
  WN_STATUS_IO = 3,
  WN_STATUS_PARSE = 4,
  WN_STATUS_NULL_POINTER = 5,
  WN_STATUS_PANIC = 6,
} WnStatus;

/**
 * Shape of the starting graph.
 */
typedef enum WnInitialKind {
  WN_INITIAL_KIND_CYCLE = 0,
  WN_INITIAL_KIND_COMPLETE = 1,
  /**
   * Edge-list file named by `initial_path`.
   */
  WN_INITIAL_KIND_FILE = 2,
} WnInitialKind;

/**
 * Opaque graph handle.
 */
typedef struct WnGraph WnGraph;

/**
 * Generation parameters. Fill with `wn_gen_params_default` and override fields.
 */
typedef struct WnGenParams {
  enum WnInitialKind initial_kind;
  /**
   * Node count for `Cycle` and `Complete`.
   */
  uint64_t initial_size;
  /**
   * NUL-terminated path for `File`; ignored otherwise.
   */
  const char *initial_path;
  uint64_t nodes_to_add;
  uint64_t marks_per_walk;
  double p1;
  /**
   * `false` runs the no-shortcut baseline.
   */
  bool special_edges;
  double beta;
  double epsilon;
  uint64_t seed;
} WnGenParams;

/**
 * Measurements of one graph. `gamma` is NaN when fewer than two distinct degrees exist.
 */
typedef struct WnMetrics {
  uint64_t node_count;
  uint64_t edge_count;
  double avg_local_clustering;
  double transitivity;
  double avg_shortest_path;
  double gamma;
  uint64_t max_degree;
  /**
   * 0 for exact path lengths, otherwise the number of BFS sources used.
   */
  uint64_t aspl_sources;
} WnMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next failing call.
 */
const char *wn_last_error_message(void);

/**
 * C10 start, N = 1000, m = 5, p1 = 0.5, shortcuts on, beta = 2, epsilon = 0.05, seed 0.
 */
enum WnStatus wn_gen_params_default(struct WnGenParams *out);

/**
 * A new empty graph. Never NULL.
 */
struct WnGraph *wn_graph_new(void);

/**
 * Releases a graph. NULL is ignored.
 */
void wn_graph_free(struct WnGraph *g);

/**
 * Number of nodes; 0 for NULL.
 */
uint64_t wn_graph_node_count(const struct WnGraph *g);

/**
 * Number of edges; 0 for NULL.
 */
uint64_t wn_graph_edge_count(const struct WnGraph *g);

enum WnStatus wn_graph_add_node(struct WnGraph *g, uint32_t *out_id);

/**
 * Adds edge `{u, v}`. `inserted` (optional) receives false for self-loops and existing edges.
 */
enum WnStatus wn_graph_add_edge(struct WnGraph *g, uint32_t u, uint32_t v, bool *inserted);

/**
 * Borrows the neighbor list of `v`. The array stays valid until the graph is mutated or freed.
 */
enum WnStatus wn_graph_neighbors(const struct WnGraph *g,
                                 uint32_t v,
                                 const uint32_t **out_ids,
                                 size_t *out_len);

/**
 * Loads an edge-list file into a new graph stored in `*out`.
 */
enum WnStatus wn_graph_read_edge_list(const char *path, struct WnGraph **out);

enum WnStatus wn_graph_write_edge_list(const struct WnGraph *g, const char *path);

/**
 * Grows a graph; on success `*out` owns a new handle.
 */
enum WnStatus wn_generate(const struct WnGenParams *params, struct WnGraph **out);

/**
 * Measures a connected graph. `aspl_sources == 0` computes exact path lengths;
 * otherwise that many BFS sources are drawn with `aspl_seed`.
 */
enum WnStatus wn_measure(const struct WnGraph *g,
                         uint64_t aspl_sources,
                         uint64_t aspl_seed,
                         struct WnMetrics *out);

/**
 * Branching-process diameter estimate used to size the shortcut distances.
 */
enum WnStatus wn_estimate_diameter(uint64_t node_count,
                                   uint64_t edge_count,
                                   double epsilon,
                                   double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WALKNET_H */
