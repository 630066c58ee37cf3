#ifndef QFK_H
#define QFK_H

/* Generated by cbindgen from qfk-ffi. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QfkStatus {
  QFK_STATUS_OK = 0,
  QFK_STATUS_NULL_POINTER = 1,
  QFK_STATUS_INVALID_PARAMETER = 2,
  QFK_STATUS_PARSE = 3,
  QFK_STATUS_CONSTRUCTION = 4,
  QFK_STATUS_DIMENSION = 5,
  QFK_STATUS_IO = 6,
  QFK_STATUS_BUFFER_TOO_SMALL = 7,
  QFK_STATUS_OUT_OF_RANGE = 8,
  QFK_STATUS_PANIC = 9,
} QfkStatus;

/**
 * Opaque filter bank.
 */
typedef struct QfkBank QfkBank;

/**
 * Opaque coefficient pyramid.
 */
typedef struct QfkPyramid QfkPyramid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or NULL. Valid until the next call.
 */
const char *qfk_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *qfk_version(void);

/**
 * # Safety
 * `out` must be a valid pointer to a `QfkBank *`.
 */
enum QfkStatus qfk_bank_thm22(uint32_t n, struct QfkBank **out);

/**
 * # Safety
 * `out` must be a valid pointer to a `QfkBank *`.
 */
enum QfkStatus qfk_bank_complex_dc(uint32_t n, struct QfkBank **out);

/**
 * # Safety
 * `out` must be a valid pointer to a `QfkBank *`.
 */
enum QfkStatus qfk_bank_tensor(uint32_t n, uint32_t m, struct QfkBank **out);

/**
 * Six-multiple bank from the interpolatory low-pass of order `k`.
 *
 * # Safety
 * `out` must be a valid pointer to a `QfkBank *`.
 */
enum QfkStatus qfk_bank_six_multiple_interp(uint32_t k, struct QfkBank **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string; `out` a valid pointer to a `QfkBank *`.
 */
enum QfkStatus qfk_bank_load(const char *path, struct QfkBank **out);

/**
 * # Safety
 * `bank` must be a live handle; `path` a NUL-terminated string.
 */
enum QfkStatus qfk_bank_save(const struct QfkBank *bank, const char *path);

/**
 * # Safety
 * `bank` must be NULL or a handle not yet freed.
 */
void qfk_bank_free(struct QfkBank *bank);

/**
 * Number of filters (low-pass first); 0 for a NULL handle.
 *
 * # Safety
 * `bank` must be NULL or a live handle.
 */
size_t qfk_bank_filter_count(const struct QfkBank *bank);

/**
 * Support box of filter `i`: coefficient (min[0] + r, min[1] + c) is entry r·shape[1] + c.
 *
 * # Safety
 * `bank` must be a live handle; `min` and `shape` must point to two writable elements each.
 */
enum QfkStatus qfk_bank_filter_shape(const struct QfkBank *bank,
                                     size_t i,
                                     int64_t *min,
                                     size_t *shape);

/**
 * Copies filter `i` into `re` and `im` (either may be NULL), each of length `len`.
 *
 * # Safety
 * Non-NULL `re`/`im` must point to `len` writable doubles.
 */
enum QfkStatus qfk_bank_filter_coeffs(const struct QfkBank *bank,
                                      size_t i,
                                      double *re,
                                      double *im,
                                      size_t len);

/**
 * # Safety
 * `bank` must be a live handle; `out` a valid pointer.
 */
enum QfkStatus qfk_bank_tight_residual(const struct QfkBank *bank, double *out);

/**
 * Sum-rule order of the low-pass filter.
 *
 * # Safety
 * `bank` must be a live handle; `out` a valid pointer.
 */
enum QfkStatus qfk_bank_sum_rules(const struct QfkBank *bank, size_t *out);

/**
 * Vanishing-moment order of filter `i`; `SIZE_MAX` for a zero filter.
 *
 * # Safety
 * `bank` must be a live handle; `out` a valid pointer.
 */
enum QfkStatus qfk_bank_vanishing_moments(const struct QfkBank *bank, size_t i, size_t *out);

/**
 * L₂ smoothness exponent of the low-pass filter from the transition operator.
 *
 * # Safety
 * `bank` must be a live handle; `out` a valid pointer.
 */
enum QfkStatus qfk_bank_smoothness(const struct QfkBank *bank, double *out);

/**
 * Analyzes a real row-major `width`×`height` image.
 *
 * # Safety
 * `samples` must point to `width*height` doubles; `out` to a `QfkPyramid *`.
 */
enum QfkStatus qfk_analyze(const struct QfkBank *bank,
                           const double *samples,
                           size_t width,
                           size_t height,
                           size_t levels,
                           struct QfkPyramid **out);

/**
 * Reconstructs into `re`/`im` (either may be NULL), each of length `len`.
 *
 * # Safety
 * Non-NULL `re`/`im` must point to `len` writable doubles.
 */
enum QfkStatus qfk_synthesize(const struct QfkBank *bank,
                              const struct QfkPyramid *pyr,
                              double *re,
                              double *im,
                              size_t len);

/**
 * # Safety
 * `pyr` must be NULL or a handle not yet freed.
 */
void qfk_pyramid_free(struct QfkPyramid *pyr);

/**
 * Number of levels; 0 for a NULL handle.
 *
 * # Safety
 * `pyr` must be NULL or a live handle.
 */
size_t qfk_pyramid_levels(const struct QfkPyramid *pyr);

/**
 * Length of band `band` at `level` (1-based); band 0 is the low-pass at the deepest level.
 *
 * # Safety
 * `pyr` must be a live handle; `out` a valid pointer.
 */
enum QfkStatus qfk_pyramid_band_len(const struct QfkPyramid *pyr,
                                    size_t level,
                                    size_t band_index,
                                    size_t *out);

/**
 * Copies a band, indexed as in [`qfk_pyramid_band_len`].
 *
 * # Safety
 * Non-NULL `re`/`im` must point to `len` writable doubles.
 */
enum QfkStatus qfk_pyramid_band(const struct QfkPyramid *pyr,
                                size_t level,
                                size_t band_index,
                                double *re,
                                double *im,
                                size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QFK_H */
