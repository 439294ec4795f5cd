#ifndef INVARIANT_ALGEBRA_H
#define INVARIANT_ALGEBRA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes mirroring the command-line exit codes.
 */
#define IA_STATUS_OK 0

#define IA_STATUS_DOMAIN_ERROR 1

#define IA_STATUS_USAGE_ERROR 2

/**
 * Opaque handle to a parsed polynomial vector field.
 */
typedef struct IaField IaField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *ia_version(void);

/**
 * Most recent error on this thread as a JSON document, or NULL when the
 * last call succeeded. Do not free; the buffer is reused by later calls.
 */
const char *ia_last_error(void);

/**
 * Release a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned through an `out_json`
 * parameter of this library and not yet freed; NULL is ignored.
 */
void ia_string_free(char *s);

/**
 * Parse a vector field from its JSON document into an opaque handle.
 * Returns NULL on failure (consult [`ia_last_error`]).
 *
 * # Safety
 * `field_json` must point to a NUL-terminated UTF-8 string.
 */
struct IaField *ia_field_from_json(const char *field_json);

/**
 * Release a field handle.
 *
 * # Safety
 * `field` must come from [`ia_field_from_json`] and not be freed twice;
 * NULL is ignored.
 */
void ia_field_free(struct IaField *field);

/**
 * Dimension n of the field, or -1 for NULL.
 *
 * # Safety
 * `field` must be a live handle or NULL.
 */
int ia_field_dimension(const struct IaField *field);

/**
 * Total degree m of the field, or -1 for NULL.
 *
 * # Safety
 * `field` must be a live handle or NULL.
 */
int ia_field_degree(const struct IaField *field);

/**
 * Serialize the handle back to its canonical JSON document.
 *
 * # Safety
 * `field` must be a live handle; `out_json` must be a valid pointer.
 */
int ia_field_to_json(const struct IaField *field, char **out_json);

/**
 * Construct the distinguished quadratic field for a prescription
 * document; the result JSON includes the seventh-idempotent report.
 *
 * # Safety
 * `gamma_json` must be a NUL-terminated UTF-8 string; `out_json` valid.
 */
int ia_construct(const char *gamma_json, char **out_json);

/**
 * Certify the eigenvalue dichotomy at the supplied invariant lines.
 *
 * # Safety
 * `field` must be a live handle; `lines_json` a NUL-terminated UTF-8
 * string; `out_json` valid.
 */
int ia_analyze(const struct IaField *field,
               const char *lines_json,
               uint32_t precision_bits,
               char **out_json);

/**
 * Verify one polynomial as a semi-invariant of the field.
 *
 * # Safety
 * `field` live handle, `psi_text` NUL-terminated UTF-8, `out_json` valid.
 */
int ia_semi_verify(const struct IaField *field, const char *psi_text, char **out_json);

/**
 * Search all semi-invariants of degree at most `dmax`; `budget` of 0
 * selects the default elimination cap.
 *
 * # Safety
 * `field` live handle, `out_json` valid.
 */
int ia_semi_search(const struct IaField *field, uint64_t dmax, uint64_t budget, char **out_json);

/**
 * Check the multiplier identity for a factor document.
 *
 * # Safety
 * `field` live handle, `factors_json` NUL-terminated UTF-8, `out_json`
 * valid.
 */
int ia_multiplier(const struct IaField *field, const char *factors_json, char **out_json);

/**
 * Seeded genericity experiment; returns the stats document.
 *
 * # Safety
 * `out_json` must be a valid pointer.
 */
int ia_sample(uint64_t count,
              int64_t range,
              uint64_t seed,
              uint32_t precision_bits,
              char **out_json);

/**
 * Closed-form degree-bound report; `degrees_csv` may be NULL.
 *
 * # Safety
 * `degrees_csv` NULL or NUL-terminated UTF-8, `out_json` valid.
 */
int ia_bounds(uint64_t m, uintptr_t n, const char *degrees_csv, char **out_json);

/**
 * Transform of the field with respect to a direction given as comma
 * separated constant expressions.
 *
 * # Safety
 * `field` live handle, `direction` NUL-terminated UTF-8, `out_json`
 * valid.
 */
int ia_transform_field(const struct IaField *field, const char *direction, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* INVARIANT_ALGEBRA_H */
