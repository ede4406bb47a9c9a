#ifndef HITREE_H
#define HITREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HitStatus {
  HIT_STATUS_OK = 0,
  HIT_STATUS_NULL_POINTER = 1,
  HIT_STATUS_INVALID_ARGUMENT = 2,
  /**
   * A legitimate negative outcome, such as no star cover.
   */
  HIT_STATUS_NOT_FOUND = 3,
  HIT_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * A certificate failed after construction; indicates a bug.
   */
  HIT_STATUS_INTERNAL = 5,
  HIT_STATUS_PANIC = 6,
} HitStatus;

/**
 * Opaque graph handle.
 */
typedef struct HitGraph HitGraph;

/**
 * Opaque spanning-tree handle; remembers the graph it spans.
 */
typedef struct HitTree HitTree;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *hit_last_error(void);

/**
 * Builds a simple graph on `n` vertices from `edge_count` pairs stored
 * flat in `edges` (`2 * edge_count` entries).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (or be null when
 * `edge_count` is 0) and `out` must be writable.
 */
enum HitStatus hit_graph_new(size_t n,
                             const size_t *edges,
                             size_t edge_count,
                             struct HitGraph **out);

/**
 * Parses a graph6 string.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` writable.
 */
enum HitStatus hit_graph_from_graph6(const char *text, struct HitGraph **out);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
size_t hit_graph_vertex_count(const struct HitGraph *g);

/**
 * # Safety
 * `g` must be null or a live handle from this library.
 */
size_t hit_graph_edge_count(const struct HitGraph *g);

/**
 * # Safety
 * `g` must be null or a handle from this library not yet freed.
 */
void hit_graph_free(struct HitGraph *g);

/**
 * Spanning tree with no three consecutive vertices that have tree degree 2
 * and graph degree at least 3.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum HitStatus hit_build_good_tree(const struct HitGraph *g, struct HitTree **out);

/**
 * Spanning tree whose degree-2 vertices are pairwise non-adjacent, via a
 * large bipartite subgraph and a cover by stars with at least 6 leaves.
 * Returns `NotFound` when no such cover is found.
 *
 * # Safety
 * `g` must be a live graph handle and `out` writable.
 */
enum HitStatus hit_build_no_adjacent_deg2(const struct HitGraph *g, struct HitTree **out);

/**
 * # Safety
 * `t` must be null or a live tree handle.
 */
size_t hit_tree_edge_count(const struct HitTree *t);

/**
 * Copies the sorted edges as flat pairs into `buf`, which holds `cap`
 * values; `cap` must be at least twice the edge count.
 *
 * # Safety
 * `t` must be a live tree handle and `buf` writable for `cap` values.
 */
enum HitStatus hit_tree_edges(const struct HitTree *t, size_t *buf, size_t cap);

/**
 * Builds a tree handle from flat edge pairs, checking that they form a
 * spanning tree of `g`.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` values and `out` be writable.
 */
enum HitStatus hit_tree_new(const struct HitGraph *g,
                            const size_t *edges,
                            size_t edge_count,
                            struct HitTree **out);

/**
 * # Safety
 * `t` must be null or a tree handle not yet freed.
 */
void hit_tree_free(struct HitTree *t);

/**
 * Whether `t` has no path of three vertices of tree degree 2 and degree at
 * least 3 in `g`.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum HitStatus hit_tree_is_good(const struct HitGraph *g, const struct HitTree *t, bool *out);

/**
 * # Safety
 * `t` must be live and `out` writable.
 */
enum HitStatus hit_tree_degree2_independent(const struct HitTree *t, bool *out);

/**
 * Exact number of spanning trees as a decimal string; release it with
 * [`hit_string_free`].
 *
 * # Safety
 * `g` must be live and `out` writable.
 */
enum HitStatus hit_count_spanning_trees(const struct HitGraph *g, char **out);

/**
 * A reducible cycle, path or configuration as JSON, using the vertices of
 * degree at least 4 (plus `extra`, `extra_count` ids) as the special set.
 *
 * # Safety
 * `g` must be live, `extra` readable for `extra_count` values (or null when
 * zero) and `out` writable.
 */
enum HitStatus hit_find_structure(const struct HitGraph *g,
                                  const size_t *extra,
                                  size_t extra_count,
                                  char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void hit_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HITREE_H */
