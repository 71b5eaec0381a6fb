#ifndef HOMPERC_H
#define HOMPERC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HpStatus {
  HP_OK = 0,
  HP_NULL_POINTER = 1,
  HP_INVALID_ARGUMENT = 2,
  HP_UNSUPPORTED_DIMENSION = 3,
  HP_SIZE_TOO_SMALL = 4,
  HP_CLIQUE_COUNT_MISMATCH = 5,
  HP_NON_MONOTONE_FILTRATION = 6,
  HP_DANGLING_BOUNDARY = 7,
  HP_ESSENTIAL_COUNT_MISMATCH = 8,
  HP_RADIUS_TOO_LARGE = 9,
  HP_SPECTRUM_NOT_PSD = 10,
  HP_ZERO_COUNT_MISMATCH = 11,
  HP_NO_BRACKETS_FOUND = 12,
  HP_BUFFER_TOO_SMALL = 13,
  HP_INTERNAL = 99,
} HpStatus;

typedef enum HpModel {
  HP_CUBICAL = 0,
  HP_PERM = 1,
  HP_BOOLEAN = 2,
  HP_GRF = 3,
} HpModel;

/**
 * Opaque persistence barcode.
 */
typedef struct HpBarcode HpBarcode;

/**
 * Opaque filtered complex.
 */
typedef struct HpComplex HpComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *hp_version(void);

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call on the same thread.
 */
const char *hp_last_error_message(void);

/**
 * Random cubical complex on an `m^d` torus.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle into.
 */
enum HpStatus hp_gen_cubical(size_t d, size_t m, uint64_t seed, struct HpComplex **out);

/**
 * Permutahedral nerve complex on `m^d` sites.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle into.
 */
enum HpStatus hp_gen_perm(size_t d, size_t m, uint64_t seed, struct HpComplex **out);

/**
 * Periodic Čech filtration (in `r`, up to dimension `d + 1`) of a Poisson
 * process of intensity `n`, truncated at `r_max < 0.25`.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle into.
 */
enum HpStatus hp_gen_boolean(double n,
                             size_t d,
                             uint64_t seed,
                             double r_max,
                             struct HpComplex **out);

/**
 * Lower-star cubical filtration of a Gaussian field on a `g^d` grid.
 *
 * # Safety
 * `out` must be a valid pointer to write a handle into.
 */
enum HpStatus hp_gen_grf(size_t d, size_t g, double sigma2, uint64_t seed, struct HpComplex **out);

/**
 * # Safety
 * `c` must be null or a handle from this library not yet freed.
 */
void hp_complex_free(struct HpComplex *c);

/**
 * Total number of cells.
 *
 * # Safety
 * `c` must be a live handle and `len` writable.
 */
enum HpStatus hp_complex_len(const struct HpComplex *c, size_t *len);

/**
 * Number of cells of dimension `k`.
 *
 * # Safety
 * `c` must be a live handle and `count` writable.
 */
enum HpStatus hp_complex_count_dim(const struct HpComplex *c, size_t k, size_t *count);

/**
 * Euler characteristic of the sublevel complex at `t`.
 *
 * # Safety
 * `c` must be a live handle and `chi` writable.
 */
enum HpStatus hp_complex_euler_at(const struct HpComplex *c, double t, int64_t *chi);

/**
 * Persistence over GF(2) in degrees `0..=max_degree`.
 *
 * # Safety
 * `c` must be a live handle and `out` writable.
 */
enum HpStatus hp_persistence(const struct HpComplex *c, size_t max_degree, struct HpBarcode **out);

/**
 * # Safety
 * `b` must be null or a handle from this library not yet freed.
 */
void hp_barcode_free(struct HpBarcode *b);

/**
 * Births and deaths of the degree-`k` intervals (death is `+inf` for
 * essential classes), sorted by birth.
 *
 * # Safety
 * `b` must be a live handle; `births`/`deaths` must hold `cap` values.
 */
enum HpStatus hp_barcode_intervals(const struct HpBarcode *b,
                                   size_t k,
                                   double *births,
                                   double *deaths,
                                   size_t cap,
                                   size_t *len);

/**
 * Sorted births of essential degree-`k` classes; fails with
 * `HP_ESSENTIAL_COUNT_MISMATCH` unless there are `C(d, k)` of them.
 *
 * # Safety
 * `b` must be a live handle; `out` must hold `cap` values.
 */
enum HpStatus hp_essential_births(const struct HpBarcode *b,
                                  size_t k,
                                  double *out,
                                  size_t cap,
                                  size_t *len);

/**
 * Expected EC of a model at parameter `t` (`p`, `λ` or `α`) with `n`
 * sites, points or grid vertices.
 *
 * # Safety
 * `value` must be writable.
 */
enum HpStatus hp_expected_ec(enum HpModel model, size_t d, double n, double t, double *value);

/**
 * Interior zeros of the closed-form expected EC curve (`d - 1` of them).
 *
 * # Safety
 * `out` must hold `cap` values and `len` be writable.
 */
enum HpStatus hp_ec_zeros(enum HpModel model, size_t d, double *out, size_t cap, size_t *len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOMPERC_H */
