#ifndef RANKHARM_H
#define RANKHARM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Outcome of a call across the C boundary.
typedef enum RhStatus {
  RH_STATUS_OK = 0,
  RH_STATUS_NULL_POINTER = 1,
  RH_STATUS_UTF8 = 2,
  RH_STATUS_PARSE = 3,
  RH_STATUS_MISMATCH = 4,
  RH_STATUS_INVALID_INPUT = 5,
  RH_STATUS_ARITHMETIC = 6,
  RH_STATUS_OVERFLOW = 7,
  RH_STATUS_PANIC = 8,
} RhStatus;

// A rank-two function or distribution.
typedef struct RhElement RhElement;

// Coordinates `(a, b, c, m)` of the extended Heisenberg group.
typedef struct RhQuad {
  int64_t a;
  int64_t b;
  int64_t c;
  int64_t m;
} RhQuad;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *rh_last_error(void);

// Parses a `rank2fn` or `rank2dist` JSON document.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum RhStatus rh_element_from_json(const char *json, struct RhElement **out);

// Serializes an element to JSON.
//
// # Safety
// `elem` must come from this library and `out` must be a valid pointer.
enum RhStatus rh_element_to_json(const struct RhElement *elem, char **out);

// Returns 1 for a function, 0 for a distribution, −1 for a null handle.
//
// # Safety
// `elem` must be null or come from this library.
int32_t rh_element_is_function(const struct RhElement *elem);

// Fourier transform with parameter `(gamma_n, gamma_p)`.
//
// # Safety
// `elem` must come from this library and `out` must be a valid pointer.
enum RhStatus rh_element_fourier(const struct RhElement *elem,
                                 int64_t gamma_n,
                                 int64_t gamma_p,
                                 struct RhElement **out);

// Action of the extended group element with coordinates `g`; the element
// must live over the base point `(0, −∞)`.
//
// # Safety
// `elem` must come from this library and `out` must be a valid pointer.
enum RhStatus rh_element_act_quad(const struct RhElement *elem,
                                  struct RhQuad g,
                                  struct RhElement **out);

// Pairing of a function with a distribution, in either order, as a scalar string.
//
// # Safety
// Both handles must come from this library and `out` must be a valid pointer.
enum RhStatus rh_pair(const struct RhElement *a, const struct RhElement *b, char **out);

// Releases an element; null is ignored.
//
// # Safety
// `elem` must be null or come from this library, and must not be used afterwards.
void rh_element_free(struct RhElement *elem);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void rh_string_free(char *s);

// Product in the extended Heisenberg group.
//
// # Safety
// `out` must be a valid pointer.
enum RhStatus rh_quad_mul(struct RhQuad x, struct RhQuad y, struct RhQuad *out);

// Inverse in the extended Heisenberg group.
//
// # Safety
// `out` must be a valid pointer.
enum RhStatus rh_quad_inverse(struct RhQuad x, struct RhQuad *out);

// Runs a verification suite; `passed` receives 1 when every check passes.
// `report_json` may be null; otherwise it receives the full report.
//
// # Safety
// `suite` must be a NUL-terminated string, `passed` a valid pointer, and
// `report_json` null or valid.
enum RhStatus rh_verify(const char *suite,
                        uint64_t seed,
                        size_t size,
                        int32_t *passed,
                        char **report_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANKHARM_H */
