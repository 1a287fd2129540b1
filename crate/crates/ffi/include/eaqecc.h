#ifndef EAQECC_H
#define EAQECC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Certification state of a construction.
 */
typedef enum EaqCertification {
  EAQ_CERTIFICATION_NOT_PERFORMED = 0,
  EAQ_CERTIFICATION_PASSED = 1,
  EAQ_CERTIFICATION_FAILED = 2,
} EaqCertification;

/**
 * Result codes; `Ok` is zero.
 */
typedef enum EaqStatus {
  EAQ_STATUS_OK = 0,
  /**
   * a required pointer was null
   */
  EAQ_STATUS_NULL_POINTER = 1,
  /**
   * malformed argument, such as a non-UTF-8 string or unknown theorem
   */
  EAQ_STATUS_INVALID_ARGUMENT = 2,
  /**
   * the parameters break a hypothesis of the construction
   */
  EAQ_STATUS_INVALID_REQUEST = 3,
  /**
   * exact distance required but the enumeration exceeds the budget
   */
  EAQ_STATUS_BUDGET_EXCEEDED = 4,
  /**
   * the library failed while building matrices
   */
  EAQ_STATUS_LIBRARY_ERROR = 5,
  /**
   * a Rust panic was caught at the boundary
   */
  EAQ_STATUS_PANIC = 6,
} EaqStatus;

/**
 * Opaque construction result.
 */
typedef struct EaqConstruction EaqConstruction;

/**
 * `[[n, k, d; c]]_q`. `d_exact` is meaningful only when `has_d_exact` is set.
 */
typedef struct EaqParams {
  uint64_t q;
  uint64_t n;
  uint64_t k;
  uint64_t d_lower;
  uint64_t d_exact;
  bool has_d_exact;
  uint64_t c;
} EaqParams;

/**
 * Builds a construction.
 *
 * `theorem` is one of `bch`, `bchcase1`, `corthree`, `corone`,
 * `reciprocal`, `bchcase2`, `reciprocal2i`, `reciprocal2ii` (case and
 * `-`/`_` are ignored). `a_l1` and `a_l2` are coset representatives; pass a
 * negative value to omit one. `eta_style` selects the reduced-rank `A_0` for
 * the case-two constructions. With `certify` the matrices are built and
 * every parameter is re-derived, enumerating distances up to `budget`
 * codewords (0 means the library default).
 *
 * # Safety
 * `theorem` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EaqStatus eaq_construct(const char *theorem,
                             uint64_t p,
                             uint32_t m,
                             uint32_t s,
                             int64_t a_l1,
                             int64_t a_l2,
                             bool eta_style,
                             bool certify,
                             uint64_t budget,
                             struct EaqConstruction **out);

/**
 * # Safety
 * `h` must be null or a handle from `eaq_construct` not yet freed.
 */
void eaq_construction_free(struct EaqConstruction *h);

/**
 * # Safety
 * `h` must be a live handle and `out` a valid pointer.
 */
enum EaqStatus eaq_construction_params(const struct EaqConstruction *h, struct EaqParams *out);

/**
 * # Safety
 * `h` must be null or a live handle.
 */
enum EaqCertification eaq_construction_certification(const struct EaqConstruction *h);

/**
 * The construction as the CLI's JSON record; null on error. Free the
 * result with `eaq_string_free`.
 *
 * # Safety
 * `h` must be null or a live handle.
 */
char *eaq_construction_to_json(const struct EaqConstruction *h);

/**
 * `B(p, m, s)`, the bound below which cosets are asymmetric of full size.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EaqStatus eaq_bound_b(uint64_t p, uint32_t m, uint32_t s, uint64_t *out);

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *eaq_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void eaq_string_free(char *s);

/**
 * Version of the JSON record layout; a static string.
 */
const char *eaq_schema_version(void);

#endif  /* EAQECC_H */
