#ifndef MASSEY_H
#define MASSEY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `Ok` and `Negative` are successful calls; the rest are errors.
 */
typedef enum {
  MASSEY_CODE_OK = 0,
  /**
   * The call succeeded and the verdict is negative: an invalid model, an
   * empty or inessential product, or a failed certificate.
   */
  MASSEY_CODE_NEGATIVE = 1,
  MASSEY_CODE_NULL_POINTER = 2,
  MASSEY_CODE_INVALID_UTF8 = 3,
  MASSEY_CODE_PARSE_ERROR = 4,
  MASSEY_CODE_INVALID_MODEL = 5,
  MASSEY_CODE_UNKNOWN_LABEL = 6,
  MASSEY_CODE_NOT_A_COCYCLE = 7,
  MASSEY_CODE_DEGREE_OUT_OF_RANGE = 8,
  MASSEY_CODE_HYPOTHESIS_FAILURE = 9,
  MASSEY_CODE_BUDGET_EXCEEDED = 10,
  MASSEY_CODE_CORRUPT_CERTIFICATE = 11,
  MASSEY_CODE_USAGE = 12,
  MASSEY_CODE_INTERNAL = 13,
  MASSEY_CODE_PANIC = 14,
} MasseyCode;

/**
 * A validated model with its labeled classes.
 */
typedef struct MasseyModel MasseyModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent error on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *massey_last_error(void);

/**
 * Engine version, static.
 */
const char *massey_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` is null or a pointer returned by this library and not yet freed.
 */
void massey_string_free(char *s);

/**
 * Loads and validates a model file given as JSON text.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is valid for a pointer write.
 */
MasseyCode massey_model_load_json(const char *json, MasseyModel **out);

/**
 * Loads a bundled model by name (`kodaira_thurston`, `torus-3`, ...).
 * `field` is null for the rationals, or a field name such as `"F5"`.
 *
 * # Safety
 * `name` is a NUL-terminated string, `field` is null or one; `out` is valid
 * for a pointer write.
 */
MasseyCode massey_model_bundled(const char *name, const char *field, MasseyModel **out);

/**
 * Releases a model handle.
 *
 * # Safety
 * `model` is null or a handle from this library not yet freed.
 */
void massey_model_free(MasseyModel *model);

/**
 * Writes `dim H^degree` to `out`.
 *
 * # Safety
 * `model` is a live handle; `out` is valid for a write.
 */
MasseyCode massey_cohomology_dim(const MasseyModel *model, uint32_t degree, uintptr_t *out);

/**
 * Validates a model file (JSON text) and writes a JSON report to `report`.
 * Returns `Negative` for an invalid model.
 *
 * # Safety
 * `json` is a NUL-terminated string; `report` is valid for a pointer write.
 */
MasseyCode massey_validate(const char *json, char **report);

/**
 * `<a, b, c>` for classes given by label or polynomial; writes the verdict
 * as JSON. Returns `Negative` for an empty or inessential product.
 *
 * # Safety
 * `model` is a live handle, `a`, `b`, `c` NUL-terminated strings, and
 * `verdict_json` valid for a pointer write.
 */
MasseyCode massey_triple(const MasseyModel *model,
                         const char *a,
                         const char *b,
                         const char *c,
                         char **verdict_json);

/**
 * Builds a blow-up certificate. `route` is `"full-triple"` or
 * `"restricted-class"`; `chern_json` is null for the zero bundle or a JSON
 * array of polynomials `c_1, ..., c_{k+1}`.
 *
 * # Safety
 * `model` is a live handle; string arguments are NUL-terminated (except a
 * null `chern_json`); `certificate` is valid for a pointer write.
 */
MasseyCode massey_blowup_certificate(const MasseyModel *model,
                                     uint32_t k,
                                     const char *route,
                                     const char *a,
                                     const char *b,
                                     const char *c,
                                     const char *chern_json,
                                     char **certificate);

/**
 * Re-checks a certificate and writes the JSON check list to `report`.
 * Returns `Negative` when a check fails.
 *
 * # Safety
 * `certificate` is a NUL-terminated string; `report` is valid for a pointer write.
 */
MasseyCode massey_certificate_verify(const char *certificate, char **report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MASSEY_H */
