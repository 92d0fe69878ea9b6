#ifndef HODGESAMP_H
#define HODGESAMP_H

/* Generated by cbindgen from hodgesamp-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes for every fallible call.
 */
typedef enum HsStatus {
  HS_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  HS_STATUS_NULL_ARGUMENT = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  HS_STATUS_INVALID_UTF8 = 2,
  /**
   * The complex JSON failed to parse or validate.
   */
  HS_STATUS_INVALID_COMPLEX = 3,
  /**
   * A numeric argument was out of range for the complex.
   */
  HS_STATUS_INVALID_ARGUMENT = 4,
  /**
   * Dataset generation failed (bad seed/radii combination).
   */
  HS_STATUS_DATASET_FAILED = 5,
  /**
   * The drawn system was rank-deficient and the sufficient conditions
   * failed, so no recovery was attempted.
   */
  HS_STATUS_RECOVERY_NOT_RUN = 6,
  /**
   * Unexpected internal failure.
   */
  HS_STATUS_INTERNAL = 7,
} HsStatus;

/**
 * Opaque handle to a validated simplicial complex.
 */
typedef struct HsComplex HsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread; do not free it.
 */
const char *hs_last_error(void);

/**
 * The builtin 7-node complex with two filled triangles and two holes.
 */
struct HsComplex *hs_complex_small(void);

/**
 * A procedural Delaunay lattice with two holes; null on failure (see
 * [`hs_last_error`]).
 */
struct HsComplex *hs_complex_two_hole(uintptr_t num_points, uint64_t seed);

/**
 * Parses and validates a complex from its JSON encoding; null on failure.
 *
 * # Safety
 * `json` must be a valid NUL-terminated C string.
 */
struct HsComplex *hs_complex_from_json(const char *json);

/**
 * Serializes a complex to JSON. Free the returned string with
 * [`hs_string_free`].
 *
 * # Safety
 * `complex` must be a live handle from this library.
 */
char *hs_complex_to_json(const struct HsComplex *complex);

/**
 * Node, edge, and triangle counts.
 *
 * # Safety
 * `complex` must be a live handle; out-pointers must be writable or null.
 */
enum HsStatus hs_complex_counts(const struct HsComplex *complex,
                                uintptr_t *out_nodes,
                                uintptr_t *out_edges,
                                uintptr_t *out_triangles);

/**
 * Dimension of the harmonic space of the edge Laplacian (the number of
 * independent holes).
 *
 * # Safety
 * `complex` must be a live handle; `out_dim` must be writable.
 */
enum HsStatus hs_complex_harmonic_dim(const struct HsComplex *complex, uintptr_t *out_dim);

/**
 * Runs one noiseless synthesis/observation/recovery cycle.
 *
 * Writes the relative reconstruction errors of the node, triangle, and
 * harmonic signals into `out_rel_err[0..3]`, and the assembled system's
 * numerical rank and column count into the rank out-pointers (when
 * non-null). Returns [`HsStatus::RecoveryNotRun`] when the system stayed
 * rank-deficient and the sufficient conditions failed.
 *
 * # Safety
 * `complex` must be a live handle; `out_rel_err` must point to at least
 * three writable doubles.
 */
enum HsStatus hs_recover_noiseless(const struct HsComplex *complex,
                                   uintptr_t w0,
                                   uintptr_t w2,
                                   uintptr_t r1,
                                   uintptr_t p_shifts,
                                   uintptr_t sample_size,
                                   uint64_t seed,
                                   bool spectral_scaling,
                                   double *out_rel_err,
                                   uintptr_t *out_rank,
                                   uintptr_t *out_full_rank);

/**
 * Evaluates the perfect-recovery conditions; writes the verdict into
 * `out_feasible`.
 *
 * # Safety
 * `complex` must be a live handle; `out_feasible` must be writable.
 */
enum HsStatus hs_check_feasibility(const struct HsComplex *complex,
                                   uintptr_t w0,
                                   uintptr_t w2,
                                   uintptr_t r1,
                                   uintptr_t p_shifts,
                                   uintptr_t sample_size,
                                   uint64_t seed,
                                   bool *out_feasible);

/**
 * Releases a complex handle. Null is ignored.
 *
 * # Safety
 * `complex` must be a handle from this library, not yet freed.
 */
void hs_complex_free(struct HsComplex *complex);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library, not yet freed.
 */
void hs_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HODGESAMP_H */
