#ifndef TILTVER_H
#define TILTVER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TvCharKind {
  TV_CHAR_KIND_WEYL = 0,
  TV_CHAR_KIND_SIMPLE = 1,
  TV_CHAR_KIND_BABY_VERMA = 2,
  TV_CHAR_KIND_QHAT = 3,
  TV_CHAR_KIND_TILTING = 4,
} TvCharKind;

typedef enum TvFormat {
  TV_FORMAT_TEXT = 0,
  TV_FORMAT_JSON = 1,
} TvFormat;

typedef enum TvStatus {
  TV_STATUS_OK = 0,
  TV_STATUS_NULL_POINTER = 1,
  TV_STATUS_INVALID_UTF8 = 2,
  TV_STATUS_CONFIG = 3,
  TV_STATUS_UNSUPPORTED_TYPE = 4,
  TV_STATUS_INVALID_WEIGHT = 5,
  TV_STATUS_UNDERDETERMINED = 6,
  TV_STATUS_TILTING_DATA_MISSING = 7,
  TV_STATUS_TABLE = 8,
  TV_STATUS_COMPUTATION = 9,
  TV_STATUS_IO = 10,
  TV_STATUS_PANIC = 11,
} TvStatus;

/**
 * Opaque handle to one `(type, p)` case with its caches.
 */
typedef struct TvCase TvCase;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *tv_last_error(void);

/**
 * Library version, statically allocated.
 */
const char *tv_version(void);

/**
 * Create a case for `type_label` (e.g. "B2") at the prime `p`.
 *
 * # Safety
 * `type_label` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TvStatus tv_case_new(const char *type_label, int64_t p, struct TvCase **out);

/**
 * Like [`tv_case_new`], with optional table files (pass NULL to skip) and
 * a switch for contravariant-form resolution of sum-formula ambiguities.
 *
 * # Safety
 * String arguments must be NULL or NUL-terminated; `out` must be valid.
 */
enum TvStatus tv_case_new_with_tables(const char *type_label,
                                      int64_t p,
                                      const char *tilting_table,
                                      const char *decomp_table,
                                      bool form_resolution,
                                      struct TvCase **out);

/**
 * Release a case; NULL is ignored.
 *
 * # Safety
 * `case` must come from `tv_case_new*` and not be used afterwards.
 */
void tv_case_free(struct TvCase *case_);

/**
 * Rank of the root datum, or 0 for NULL.
 *
 * # Safety
 * `case` must be NULL or a live handle.
 */
size_t tv_case_rank(const struct TvCase *case_);

/**
 * Release a string returned by this library; NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void tv_string_free(char *s);

/**
 * Full sweep over `X₁`. `refuted` (may be NULL) receives whether any
 * REFUTED-NECESSARY verdict occurred.
 *
 * # Safety
 * `case` must be live; `out` valid; `refuted` NULL or valid.
 */
enum TvStatus tv_tmc_report(const struct TvCase *case_,
                            enum TvFormat format,
                            char **out,
                            bool *refuted);

/**
 * Ext-weight candidate report.
 *
 * # Safety
 * `case` must be live and `out` valid.
 */
enum TvStatus tv_ext_report(const struct TvCase *case_, enum TvFormat format, char **out);

/**
 * Levi comparison for the 0-based simple roots `j[0..j_len]`.
 *
 * # Safety
 * `case` must be live, `j` valid for `j_len` reads (or NULL with
 * `j_len = 0`), and `out` valid.
 */
enum TvStatus tv_levi_report(const struct TvCase *case_,
                             const size_t *j,
                             size_t j_len,
                             enum TvFormat format,
                             char **out);

/**
 * Sweep of the region `⟨λ, α₀∨⟩ ≤ p(h−2)`.
 *
 * # Safety
 * `case` must be live and `out` valid.
 */
enum TvStatus tv_ph2_report(const struct TvCase *case_, enum TvFormat format, char **out);

/**
 * One character at the weight `coords[0..len]`.
 *
 * # Safety
 * `case` must be live, `coords` valid for `len` reads, `out` valid.
 */
enum TvStatus tv_character(const struct TvCase *case_,
                           enum TvCharKind kind,
                           const int64_t *coords,
                           size_t len,
                           enum TvFormat format,
                           char **out);

/**
 * `a^λ_μ` as a JSON object keyed by comma-separated weights.
 *
 * # Safety
 * `case` must be live, `coords` valid for `len` reads, `out` valid.
 */
enum TvStatus tv_a_coefficients(const struct TvCase *case_,
                                const int64_t *coords,
                                size_t len,
                                char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TILTVER_H */
