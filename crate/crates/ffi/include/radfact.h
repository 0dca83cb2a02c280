#ifndef RADFACT_H
#define RADFACT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all entry points.
 */
typedef enum RadfactStatus {
  RADFACT_STATUS_OK = 0,
  RADFACT_STATUS_NULL_POINTER = 1,
  RADFACT_STATUS_INVALID_INPUT = 2,
  RADFACT_STATUS_RESOURCE = 3,
  RADFACT_STATUS_DISAGREEMENT = 4,
  RADFACT_STATUS_PANIC = 5,
} RadfactStatus;

/**
 * Opaque ideal of a quadratic order.
 */
typedef struct RadfactQuadIdeal RadfactQuadIdeal;

/**
 * Opaque quadratic order.
 */
typedef struct RadfactQuadRing RadfactQuadRing;

/**
 * Opaque finite ring.
 */
typedef struct RadfactRing RadfactRing;

/**
 * Resource bounds. A zero field keeps the library default.
 */
typedef struct RadfactLimits {
  uint64_t max_order;
  uint64_t max_ideals;
  uint64_t max_norm;
} RadfactLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *radfact_version(void);

/**
 * Message for the last failure on this thread, or null. Valid until the next
 * call into the library from the same thread.
 */
const char *radfact_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void radfact_string_free(char *s);

/**
 * Runs a CLI command (`factor`, `decide-ssp`, `spectrum`, `ideals`,
 * `sf-chain`, `census`) on `input` and returns its JSON report. The report
 * is produced for failures too; `exit_code` receives the CLI exit status.
 *
 * # Safety
 * String arguments must be NUL-terminated. `limits` may be null.
 */
enum RadfactStatus radfact_run(const char *command,
                               const char *input,
                               const struct RadfactLimits *limits,
                               char **report,
                               int32_t *exit_code);

/**
 * Builds a finite ring from a JSON description.
 *
 * # Safety
 * `json` must be NUL-terminated; `out` must be writable. `limits` may be null.
 */
enum RadfactStatus radfact_ring_from_json(const char *json,
                                          const struct RadfactLimits *limits,
                                          struct RadfactRing **out);

/**
 * # Safety
 * `ring` must come from [`radfact_ring_from_json`] and not be freed twice.
 */
void radfact_ring_free(struct RadfactRing *ring);

/**
 * Number of elements, or 0 for a null handle.
 *
 * # Safety
 * `ring` must be a live handle or null.
 */
uint64_t radfact_ring_order(const struct RadfactRing *ring);

/**
 * Number of ideals.
 *
 * # Safety
 * `ring` must be a live handle; `out` must be writable.
 */
enum RadfactStatus radfact_ring_ideal_count(const struct RadfactRing *ring, uint64_t *out);

/**
 * Decides whether every ideal is a product of radical ideals. `report`, when
 * non-null, receives a JSON object with the witness and the factorizations.
 *
 * # Safety
 * `ring` must be a live handle; `is_ssp` must be writable; `report` may be null.
 */
enum RadfactStatus radfact_ring_decide_ssp(const struct RadfactRing *ring,
                                           bool *is_ssp,
                                           char **report);

/**
 * Creates the ring of integers of Q(sqrt(d)) for squarefree `d` other than 0 and 1.
 *
 * # Safety
 * `out` must be writable. `limits` may be null.
 */
enum RadfactStatus radfact_quad_ring_new(int64_t d,
                                         const struct RadfactLimits *limits,
                                         struct RadfactQuadRing **out);

/**
 * # Safety
 * `ring` must come from [`radfact_quad_ring_new`] and not be freed twice.
 */
void radfact_quad_ring_free(struct RadfactQuadRing *ring);

/**
 * Ideal generated by `x[k] + y[k]*w` for `k < n`, where `w` is the standard
 * integral basis element.
 *
 * # Safety
 * `x` and `y` must point to `n` values; `out` must be writable.
 */
enum RadfactStatus radfact_quad_ideal_from_gens(const struct RadfactQuadRing *ring,
                                                const int64_t *x,
                                                const int64_t *y,
                                                size_t n,
                                                struct RadfactQuadIdeal **out);

/**
 * # Safety
 * `ideal` must come from this library and not be freed twice.
 */
void radfact_quad_ideal_free(struct RadfactQuadIdeal *ideal);

/**
 * Writes the Hermite basis `(a, 0), (b, c)` to `out[0..3]`.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must point to three writable values.
 */
enum RadfactStatus radfact_quad_ideal_hnf(const struct RadfactQuadIdeal *ideal, int64_t *out);

/**
 * Index of the ideal in the order.
 *
 * # Safety
 * `ideal` must be a live handle; `out` must be writable.
 */
enum RadfactStatus radfact_quad_ideal_norm(const struct RadfactQuadIdeal *ideal, uint64_t *out);

/**
 * Prime factorization and ascending radical chain of a proper nonzero ideal,
 * as a JSON object with `factors` and `chain`.
 *
 * # Safety
 * Handles must be live and belong together; `report` must be writable.
 */
enum RadfactStatus radfact_quad_factor(const struct RadfactQuadRing *ring,
                                       const struct RadfactQuadIdeal *ideal,
                                       char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RADFACT_H */
