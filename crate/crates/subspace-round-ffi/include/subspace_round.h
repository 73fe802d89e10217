#ifndef SUBSPACE_ROUND_H
#define SUBSPACE_ROUND_H

/* Generated by cbindgen from subspace-round-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible entry point.
 */
typedef enum SrStatus {
  SR_STATUS_OK = 0,
  /**
   * A null pointer, bad dimension, or otherwise invalid argument.
   */
  SR_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Input validation failed (non-orthonormal rows, bad weights, ...).
   */
  SR_STATUS_INVALID_INPUT = 2,
  /**
   * The algorithm signaled a numeric or structural failure.
   */
  SR_STATUS_NUMERIC = 3,
  /**
   * Text input failed to parse.
   */
  SR_STATUS_PARSE = 4,
  /**
   * A panic was caught at the boundary.
   */
  SR_STATUS_PANIC = 5,
} SrStatus;

/**
 * Opaque embedding handle (k×n matrix with orthonormal rows).
 */
typedef struct SrEmbedding SrEmbedding;

/**
 * Opaque weighted-graph handle.
 */
typedef struct SrGraph SrGraph;

/**
 * Opaque partition handle (ordered disjoint node sets).
 */
typedef struct SrPartition SrPartition;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *sr_last_error_message(void);

/**
 * Build an embedding from a row-major k×n buffer. On success writes a new
 * handle to `out`; free it with `sr_embedding_free`.
 *
 * # Safety
 * `rows` must point to k·n readable doubles and `out` must be a valid
 * location to store a pointer.
 */
enum SrStatus sr_embedding_create(const double *rows,
                                  uintptr_t k,
                                  uintptr_t n,
                                  struct SrEmbedding **out);

/**
 * # Safety
 * `handle` must be null or a pointer from `sr_embedding_create`, not yet freed.
 */
void sr_embedding_free(struct SrEmbedding *handle);

/**
 * Run the clustering pipeline on an embedding.
 *
 * # Safety
 * `embedding` must be a live embedding handle; `out` must be writable.
 */
enum SrStatus sr_spectral_clustering(const struct SrEmbedding *embedding, struct SrPartition **out);

/**
 * ∥YΓ^⊥∥₂² for an embedding and a partition.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum SrStatus sr_residual(const struct SrEmbedding *embedding,
                          const struct SrPartition *partition,
                          double *out);

/**
 * Bottleneck similarity between two partitions with the same set count.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
enum SrStatus sr_partition_delta(const struct SrPartition *a,
                                 const struct SrPartition *b,
                                 double *out);

/**
 * Number of sets in a partition; 0 for a null handle.
 *
 * # Safety
 * `partition` must be null or a live handle.
 */
uintptr_t sr_partition_len(const struct SrPartition *partition);

/**
 * Number of nodes the partition is over; 0 for a null handle.
 *
 * # Safety
 * `partition` must be null or a live handle.
 */
uintptr_t sr_partition_n(const struct SrPartition *partition);

/**
 * Size of one set; 0 when the index is out of range.
 *
 * # Safety
 * `partition` must be null or a live handle.
 */
uintptr_t sr_partition_set_len(const struct SrPartition *partition, uintptr_t index);

/**
 * Copy the members of one set into `buffer` (up to `capacity` ids) and
 * return how many were written.
 *
 * # Safety
 * `partition` must be a live handle and `buffer` must point to `capacity`
 * writable usize slots.
 */
uintptr_t sr_partition_set_members(const struct SrPartition *partition,
                                   uintptr_t index,
                                   uintptr_t *buffer,
                                   uintptr_t capacity);

/**
 * # Safety
 * `handle` must be null or a pointer from a partition-producing call.
 */
void sr_partition_free(struct SrPartition *handle);

/**
 * Parse a graph from edge-list text (`u v w` lines, `#` comments, optional
 * `n <int>` header).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SrStatus sr_graph_parse(const char *text, struct SrGraph **out);

/**
 * Cluster a graph into k parts by the smallest-k Laplacian eigenvector
 * embedding, covering every node.
 *
 * # Safety
 * `graph_handle` must be a live handle; `out` must be writable.
 */
enum SrStatus sr_cluster_graph(const struct SrGraph *graph_handle,
                               uintptr_t k,
                               struct SrPartition **out);

/**
 * # Safety
 * `handle` must be null or a pointer from `sr_graph_parse`, not yet freed.
 */
void sr_graph_free(struct SrGraph *handle);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUBSPACE_ROUND_H */
