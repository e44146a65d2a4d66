/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef CDGL_H
#define CDGL_H

#include <stddef.h>
#include <stdint.h>
#include <stdbool.h>

typedef enum CdglStatus {
  CDGL_STATUS_OK = 0,
  CDGL_STATUS_NULL_POINTER = 1,
  CDGL_STATUS_INPUT = 2,
  CDGL_STATUS_PRECONDITION = 3,
  CDGL_STATUS_CONSISTENCY = 4,
  CDGL_STATUS_VERIFICATION = 5,
  CDGL_STATUS_PANIC = 6,
} CdglStatus;

/**
 * A dgl presentation together with its canonical JSON text.
 */
typedef struct CdglPresentation CdglPresentation;

typedef struct CdglReport CdglReport;

typedef struct CdglSimplicialSet CdglSimplicialSet;

/**
 * Message of the last failed call on this thread, or null. Valid until the next call.
 */
const char *cdgl_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void cdgl_string_free(char *s);

/**
 * Build `L_n`. A `truncation` of 0 selects the default for `n`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum CdglStatus cdgl_build_ln(size_t n, size_t truncation, struct CdglPresentation **out);

/**
 * Parse a presentation from its JSON text.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum CdglStatus cdgl_presentation_parse(const char *json, struct CdglPresentation **out);

/**
 * Canonical JSON text; free with [`cdgl_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum CdglStatus cdgl_presentation_to_json(const struct CdglPresentation *p, char **out);

/**
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum CdglStatus cdgl_presentation_generator_count(const struct CdglPresentation *p, size_t *out);

/**
 * Whether `d^2 = 0` holds on every generator.
 *
 * # Safety
 * `p` must be a live handle and `out` a valid pointer.
 */
enum CdglStatus cdgl_presentation_d_squared_zero(const struct CdglPresentation *p, bool *out);

/**
 * # Safety
 * `p` must be null or a handle from this library, not yet freed.
 */
void cdgl_presentation_free(struct CdglPresentation *p);

/**
 * Read a finite simplicial set from its JSON description.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum CdglStatus cdgl_sset_parse(const char *json, struct CdglSimplicialSet **out);

/**
 * # Safety
 * `x` must be null or a handle from this library, not yet freed.
 */
void cdgl_sset_free(struct CdglSimplicialSet *x);

/**
 * Dimensions of `H_k(lambda X)` for `k = 1..=cap`, written to `dims[0..cap]`.
 *
 * # Safety
 * `x` must be a live handle and `dims` must have room for `len >= cap` entries.
 */
enum CdglStatus cdgl_lambda_homology(const struct CdglSimplicialSet *x,
                                     size_t truncation,
                                     size_t cap,
                                     size_t *dims,
                                     size_t len);

/**
 * Run a verification suite by name. Zero `truncation` or `cap` selects the
 * suite's default; `model` may be null for `s2`. Timings are omitted.
 *
 * # Safety
 * `suite` and `model` (if non-null) must be nul-terminated strings and `out` a valid pointer.
 */
enum CdglStatus cdgl_verify(const char *suite,
                            size_t truncation,
                            size_t cap,
                            uint64_t seed,
                            const char *model,
                            struct CdglReport **out);

/**
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum CdglStatus cdgl_report_passed(const struct CdglReport *r, bool *out);

/**
 * Report as JSON; free with [`cdgl_string_free`].
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum CdglStatus cdgl_report_to_json(const struct CdglReport *r, char **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, not yet freed.
 */
void cdgl_report_free(struct CdglReport *r);

#endif  /* CDGL_H */
