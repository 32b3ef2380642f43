#ifndef DANIELEWSKI_H
#define DANIELEWSKI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DnlStatus {
  DNL_STATUS_OK = 0,
  /*
   Input could not be parsed.
   */
  DNL_STATUS_MALFORMED = 1,
  /*
   Input parsed but was rejected by the mathematics.
   */
  DNL_STATUS_DOMAIN = 2,
  DNL_STATUS_NULL_POINTER = 3,
  DNL_STATUS_INVALID_UTF8 = 4,
  /*
   A Rust panic was caught at the boundary.
   */
  DNL_STATUS_PANIC = 5,
} DnlStatus;

/*
 Opaque surface `x^h z - Q(x, y) = 0`.
 */
typedef struct DnlSurface DnlSurface;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Runs a command (same names as `danielewski-lab`) on a JSON document.
 `options_json` may be NULL or `{"field": "Fp:5", "order": 8,
 "permissive_comb": false, "seed": 0}`. The envelope is written to `*out`
 even when the status is `Malformed` or `Domain`.

 # Safety
 `command` and `input_json` must be valid NUL-terminated strings,
 `options_json` NULL or such a string, and `out` a valid pointer.
 */
enum DnlStatus dnl_run(const char *command,
                       const char *input_json,
                       const char *options_json,
                       char **out);

/*
 Message for the last failing call on this thread, or NULL. The pointer
 stays valid until the next call into this library on the same thread.
 */
const char *dnl_last_error(void);

/*
 # Safety
 `s` must be NULL or a string returned by this library, not yet freed.
 */
void dnl_string_free(char *s);

/*
 Library version, statically allocated.
 */
const char *dnl_version(void);

/*
 Parses `{"h": 2, "Q": "(1-x)*(y^2-1)", "field": ...}` into a new handle.

 # Safety
 `json` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum DnlStatus dnl_surface_new(const char *json, struct DnlSurface **out);

/*
 # Safety
 `s` must be NULL or a handle from [`dnl_surface_new`], not yet freed.
 */
void dnl_surface_free(struct DnlSurface *s);

/*
 Writes the number of roots of `Q(0, y)` to `*r`, or fails with `Domain`
 when the surface is not a Danielewski surface.

 # Safety
 `s` must be a live handle and `r` a valid pointer.
 */
enum DnlStatus dnl_surface_is_danielewski(const struct DnlSurface *s, uintptr_t *r);

/*
 Writes `{"h", "sigma", "R1", "R2"}` as JSON to `*out`.

 # Safety
 `s` must be a live handle and `out` a valid pointer.
 */
enum DnlStatus dnl_surface_standardize(const struct DnlSurface *s, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DANIELEWSKI_H */
