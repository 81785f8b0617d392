#ifndef FITT_H
#define FITT_H

#include <stdbool.h>
#include <stdint.h>

// Result codes.
typedef enum FittStatus {
  FITT_STATUS_OK = 0,
  FITT_STATUS_NULL_POINTER = 1,
  FITT_STATUS_INVALID_UTF8 = 2,
  FITT_STATUS_PARSE = 3,
  FITT_STATUS_VALIDATION = 4,
  FITT_STATUS_RING_MISMATCH = 5,
  FITT_STATUS_ARITHMETIC = 6,
  FITT_STATUS_PANIC = 7,
} FittStatus;

// A finitely generated ideal of a `FittRing`.
typedef struct FittIdeal FittIdeal;

// A polynomial ring: coefficient field and ordered variable names.
typedef struct FittRing FittRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *fitt_last_error(void);

// Library version as a static string.
const char *fitt_version(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void fitt_string_free(char *s);

// Creates a ring. `field` is `p=<prime>` or `rationals`; `vars` is a
// comma-separated list of variable names, largest first.
//
// # Safety
// String arguments must be nul-terminated; `out` must be writable.
enum FittStatus fitt_ring_new(const char *field, const char *vars, struct FittRing **out);

// # Safety
// `ring` must come from `fitt_ring_new` and not be freed twice.
void fitt_ring_free(struct FittRing *ring);

// Creates an ideal from generators separated by `,`, `;` or newlines.
// An empty string gives the zero ideal.
//
// # Safety
// `ring` must be a live handle; `gens` nul-terminated; `out` writable.
enum FittStatus fitt_ideal_new(const struct FittRing *ring,
                               const char *gens,
                               struct FittIdeal **out);

// # Safety
// `ideal` must come from this library and not be freed twice.
void fitt_ideal_free(struct FittIdeal *ideal);

// The reduced Groebner basis under `order` (`grevlex`, `lex` or
// `elim:<vars>`; null means grevlex), as a new ideal handle whose
// generators are the basis elements.
//
// # Safety
// `ideal` must be a live handle; `order` null or nul-terminated; `out`
// writable.
enum FittStatus fitt_ideal_groebner(const struct FittIdeal *ideal,
                                    const char *order,
                                    struct FittIdeal **out);

// Membership of the polynomial `poly` in `ideal`.
//
// # Safety
// `ideal` must be a live handle; `poly` nul-terminated; `out` writable.
enum FittStatus fitt_ideal_contains(const struct FittIdeal *ideal, const char *poly, bool *out);

// Equality of two ideals of the same ring.
//
// # Safety
// Both handles must be live; `out` writable.
enum FittStatus fitt_ideal_equal(const struct FittIdeal *a, const struct FittIdeal *b, bool *out);

// The saturation `(I : g^∞)`.
//
// # Safety
// `ideal` must be a live handle; `g` nul-terminated; `out` writable.
enum FittStatus fitt_ideal_saturate(const struct FittIdeal *ideal,
                                    const char *g,
                                    struct FittIdeal **out);

// The intersection of two ideals of the same ring.
//
// # Safety
// Both handles must be live; `out` writable.
enum FittStatus fitt_ideal_intersect(const struct FittIdeal *a,
                                     const struct FittIdeal *b,
                                     struct FittIdeal **out);

// Generators as text, `(g1, g2, ...)`.
//
// # Safety
// `ideal` must be a live handle; `out` writable. Free the result with
// `fitt_string_free`.
enum FittStatus fitt_ideal_to_string(const struct FittIdeal *ideal, char **out);

// `Fitt_index` of the Kähler differentials of `P / relations`, as an
// ideal of `P` containing the relations.
//
// # Safety
// `relations` must be a live handle; `out` writable.
enum FittStatus fitt_kaehler_fitting(const struct FittIdeal *relations,
                                     int64_t index,
                                     struct FittIdeal **out);

// Runs every check on one parameter tuple (`p=2 n=3 s=1 l=2 v=2,2,1`)
// and writes the JSON report. `policy` is `paper`, `corrected` (the
// default when null) or an integer index. With `no_timing` all chart
// timings are reported as 0. Invalid parameters are a validation error.
//
// # Safety
// `params` nul-terminated; `policy` null or nul-terminated; `out`
// writable. Free the result with `fitt_string_free`.
enum FittStatus fitt_verify_tuple_json(const char *params,
                                       const char *policy,
                                       bool no_timing,
                                       char **out);

// The non-normality probe for the prime `p`.
//
// # Safety
// `out` must be writable.
enum FittStatus fitt_check_nonnormal(uint64_t p, bool *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FITT_H */
