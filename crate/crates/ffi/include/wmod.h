#ifndef WMOD_H
#define WMOD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define WMOD_OK 0

#define WMOD_ERR_NULL 1

#define WMOD_ERR_INVALID_ARGUMENT 2

/**
 * The parameter `a` is a guarded (nonnegative integer) value.
 */
#define WMOD_ERR_GUARD 3

/**
 * The truncation window is too small or a vector left it.
 */
#define WMOD_ERR_WINDOW 4

#define WMOD_ERR_PARSE 5

#define WMOD_ERR_INTERNAL 6

#define WMOD_ERR_PANIC 7

#define WMOD_KIND_BASE 0

#define WMOD_KIND_BBL 1

#define WMOD_KIND_DEFORMED 2

#define WMOD_KIND_FINITE 3

/**
 * A truncated realization over double-precision complex scalars.
 */
typedef struct WmodModule WmodModule;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a module. `kind` is one of the `WMOD_KIND_*` values; for
 * `WMOD_KIND_FINITE` the cutoff must equal `a`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
int32_t wmod_module_new(uint32_t kind,
                        size_t n,
                        double a_re,
                        double a_im,
                        size_t cutoff,
                        struct WmodModule **out);

/**
 * Releases a module. Null is ignored.
 *
 * # Safety
 * `m` must come from [`wmod_module_new`] and not have been freed.
 */
void wmod_module_free(struct WmodModule *m);

/**
 * Number of basis vectors in the window.
 *
 * # Safety
 * `m` must be a live handle and `out` writable.
 */
int32_t wmod_module_dimension(const struct WmodModule *m, size_t *out);

/**
 * Writes the multi-index at window position `pos` into `out[0..n]`.
 *
 * # Safety
 * `m` must be a live handle and `out` must hold `len` values.
 */
int32_t wmod_module_basis_index(const struct WmodModule *m, size_t pos, uint32_t *out, size_t len);

/**
 * Applies a generator (`"E0"`, `"F1"`, `"H0"`, `"X0"`, `"Y1"`, `"iH0"`, ...)
 * to a coordinate vector of length `dimension`. Mass pushed out of the
 * window is reported in `boundary_mass` (may be null).
 *
 * # Safety
 * `m` must be a live handle; the four arrays must hold `len` values.
 */
int32_t wmod_module_apply(const struct WmodModule *m,
                          const char *generator,
                          const double *in_re,
                          const double *in_im,
                          double *out_re,
                          double *out_im,
                          size_t len,
                          double *boundary_mass);

/**
 * Largest Chevalley-Serre defect on the window; `passed` is 1 when it is
 * at most `tol`.
 *
 * # Safety
 * `m` must be a live handle; out-pointers may be null.
 */
int32_t wmod_verify_relations(const struct WmodModule *m,
                              double tol,
                              double *max_defect,
                              int32_t *passed);

/**
 * Largest violation of the adjointness relations; `unitary` is 1 when it
 * is at most `tol`.
 *
 * # Safety
 * `m` must be a live handle; out-pointers may be null.
 */
int32_t wmod_adjoint_defect(const struct WmodModule *m,
                            double tol,
                            double *max_defect,
                            int32_t *unitary);

/**
 * Fills `values[0..k]` with `b(1), …, b(k)` and reports the supremum and
 * the tail estimate (either may be null).
 *
 * # Safety
 * `values` must hold `len >= k` values.
 */
int32_t wmod_boundedness_profile(size_t n,
                                 double a_re,
                                 double a_im,
                                 size_t k,
                                 double *values,
                                 size_t len,
                                 double *sup,
                                 double *tail);

/**
 * Classifies `label` for a real form (`"su"` with `p`,`q`; `"sl"` or
 * `"spr"` with `n`; `"sppq"` with `p`,`q`; pass 0 for unused sizes).
 * `domain` is `"generic"`, `"negative"`, `"positive"` or null for generic.
 * The result is a JSON object written to `out_json`, to be released with
 * [`wmod_string_free`].
 *
 * # Safety
 * `form`, `label` and a non-null `domain` must be NUL-terminated strings;
 * `out_json` must be writable.
 */
int32_t wmod_classify(const char *form,
                      size_t p,
                      size_t q,
                      size_t n,
                      const char *label,
                      const char *domain,
                      char **out_json);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void wmod_string_free(char *s);

/**
 * Message of the last failure on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wmod_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wmod_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WMOD_H */
