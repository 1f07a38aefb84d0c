#ifndef DISCO_TOP_H
#define DISCO_TOP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DtStatus {
  DT_STATUS_OK = 0,
  DT_STATUS_INVALID_ARGUMENT = 1,
  DT_STATUS_MALFORMED_COMPLEX = 2,
  DT_STATUS_NOT_INJECTIVE = 3,
  DT_STATUS_INVALID_CONFIGURATION = 4,
  DT_STATUS_NOT_ALMOST_R_INJECTIVE = 5,
  DT_STATUS_CONSTRUCTION_FAILED = 6,
  DT_STATUS_INAPPLICABLE_THEOREM = 7,
  DT_STATUS_PARSE = 8,
  DT_STATUS_IO = 9,
  DT_STATUS_NULL_POINTER = 10,
  DT_STATUS_BUFFER_TOO_SMALL = 11,
  DT_STATUS_PANIC = 12,
} DtStatus;

/**
 * Opaque simplicial complex.
 */
typedef struct DtComplex DtComplex;

/**
 * Opaque sampled function, optionally carrying the witness it came from.
 */
typedef struct DtFunction DtFunction;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *dt_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *dt_version(void);

/**
 * The `d`-skeleton of the `n`-simplex.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum DtStatus dt_complex_skeleton(size_t n, size_t d, struct DtComplex **out);

/**
 * Parses a simplicial complex in the `# disco-top complex v1` text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum DtStatus dt_complex_parse(const char *text, struct DtComplex **out);

/**
 * The 2-fold deleted join of `k`.
 *
 * # Safety
 * `k` must be a live handle and `out` a valid pointer.
 */
enum DtStatus dt_complex_deleted_join(const struct DtComplex *k, struct DtComplex **out);

/**
 * Face counts by dimension.
 *
 * # Safety
 * `k` must be a live handle; `buf` must hold `capacity` entries; `len` must be valid.
 */
enum DtStatus dt_complex_f_vector(const struct DtComplex *k,
                                  size_t *buf,
                                  size_t capacity,
                                  size_t *len);

/**
 * Betti numbers over GF(2).
 *
 * # Safety
 * As for [`dt_complex_f_vector`].
 */
enum DtStatus dt_complex_betti(const struct DtComplex *k,
                               size_t *buf,
                               size_t capacity,
                               size_t *len);

/**
 * Betti numbers over GF(2) of the `r`-fold deleted product of `k`.
 *
 * # Safety
 * As for [`dt_complex_f_vector`].
 */
enum DtStatus dt_deleted_product_betti(const struct DtComplex *k,
                                       size_t r,
                                       size_t *buf,
                                       size_t capacity,
                                       size_t *len);

/**
 * Releases a complex; null is ignored.
 *
 * # Safety
 * `k` must be null or a handle not yet freed.
 */
void dt_complex_free(struct DtComplex *k);

/**
 * Betti numbers of the Vietoris–Rips complex of the regular `n`-gon on the
 * unit circle (geodesic metric) at threshold `t`; `strict` nonzero selects `diam < t`.
 *
 * # Safety
 * As for [`dt_complex_f_vector`].
 */
enum DtStatus dt_vr_ngon_betti(size_t n,
                               double t,
                               int strict,
                               size_t max_dim,
                               size_t *buf,
                               size_t capacity,
                               size_t *len);

/**
 * `r_n`, the vertex angle of the regular simplex inscribed in `S^n`.
 *
 * # Safety
 * `out` must be valid.
 */
enum DtStatus dt_r_constant(size_t n, double *out);

/**
 * Best known lower bound for `c_{n,k}`; `*exact` is NaN when no exact value is known.
 *
 * # Safety
 * `lower` and `exact` must be valid.
 */
enum DtStatus dt_c_constant(size_t n, size_t k, double *lower, double *exact);

/**
 * A function on a Euclidean point sample. `points` is `count × point_dim`
 * and `values` is `count × value_dim`, both row-major.
 *
 * # Safety
 * Arrays must hold the stated number of doubles; `out` must be valid.
 */
enum DtStatus dt_function_new(const double *points,
                              size_t count,
                              size_t point_dim,
                              const double *values,
                              size_t value_dim,
                              double resolution,
                              struct DtFunction **out);

/**
 * Digit-interleaving injection of the unit square into the line.
 *
 * # Safety
 * `out` must be valid.
 */
enum DtStatus dt_witness_digit_interleave(uint32_t bits, size_t grid, struct DtFunction **out);

/**
 * Almost-injective drawing of `K_5` in the plane with crossings removed by jumps.
 *
 * # Safety
 * `out` must be valid.
 */
enum DtStatus dt_witness_k5_jump(double offset, size_t grid, struct DtFunction **out);

/**
 * Almost 2-injective map of the 2-simplex to the line with one jump point.
 *
 * # Safety
 * `out` must be valid.
 */
enum DtStatus dt_witness_tverberg_one_point(size_t grid, struct DtFunction **out);

/**
 * Injective step function on `[0, 1]`; `monotone` nonzero selects the monotone one.
 *
 * # Safety
 * `out` must be valid.
 */
enum DtStatus dt_witness_step(int monotone, size_t grid, struct DtFunction **out);

/**
 * Number of sample points.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum DtStatus dt_function_len(const struct DtFunction *f, size_t *out);

/**
 * Witness self-check: 1 passed, 0 failed, -1 for functions not built as witnesses.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum DtStatus dt_function_verified(const struct DtFunction *f, int *out);

/**
 * `δ̂_ρ` with the Euclidean codomain metric.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum DtStatus dt_function_delta(const struct DtFunction *f, double rho, double *out);

/**
 * `α̂_ρ` over pairs at distance at least `sep`.
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum DtStatus dt_function_alpha(const struct DtFunction *f, double rho, double sep, double *out);

/**
 * `α̂^{(r)}_ρ` over the `r`-fold deleted product of the carrier faces.
 * Requires a function with carriers (any witness on a complex).
 *
 * # Safety
 * `f` must be a live handle and `out` valid.
 */
enum DtStatus dt_function_alpha_r(const struct DtFunction *f, size_t r, double rho, double *out);

/**
 * Releases a function; null is ignored.
 *
 * # Safety
 * `f` must be null or a handle not yet freed.
 */
void dt_function_free(struct DtFunction *f);

/**
 * Runs an experiment from a JSON config and returns the JSON report in
 * `*report` (free with [`dt_string_free`]). `*passed` is 1 when every
 * mandatory check passed.
 *
 * # Safety
 * `config_json` must be a NUL-terminated string; `report` and `passed` must be valid.
 */
enum DtStatus dt_experiment_run(const char *config_json, char **report, int *passed);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void dt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DISCO_TOP_H */
