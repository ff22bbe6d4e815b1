#ifndef ZETAKIT_H
#define ZETAKIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZkStatus {
  ZK_STATUS_OK = 0,
  // Null pointer, invalid UTF-8 or an unparsable number.
  ZK_STATUS_INVALID_ARGUMENT = 1,
  ZK_STATUS_INVALID_CONTEXT = 2,
  ZK_STATUS_POLE = 3,
  ZK_STATUS_DOMAIN = 4,
  ZK_STATUS_NO_CONVERGENCE = 5,
  ZK_STATUS_INDETERMINATE = 6,
  ZK_STATUS_ILL_CONDITIONED = 7,
  ZK_STATUS_RECONSTRUCTION = 8,
  // A panic was caught at the boundary.
  ZK_STATUS_INTERNAL = 9,
} ZkStatus;

// Opaque evaluation settings.
typedef struct ZkContext ZkContext;

// One evaluated value. `exact` is null unless the value is a known rational.
typedef struct ZkValue {
  // Decimal value, `re±imi` when complex.
  char *value;
  // Exact `p/q` form, or null.
  char *exact;
  // Absolute error bound.
  double err;
  // Nonzero when the error bound is proved.
  int32_t certified;
} ZkValue;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a context. `max_terms` of 0 keeps the library default.
//
// # Safety
// `out` must be a valid pointer.
enum ZkStatus zk_context_new(uint32_t precision_bits,
                             double target_tol,
                             size_t max_terms,
                             struct ZkContext **out);

// # Safety
// `ctx` must come from [`zk_context_new`] and not be used afterwards.
void zk_context_free(struct ZkContext *ctx);

// The spectral zeta function of the integers at `re + im i`, from its
// closed form. Numbers are integers, `p/q` or decimals; `im` may be null.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ZkStatus zk_zeta_z(const struct ZkContext *ctx,
                        const char *re,
                        const char *im,
                        struct ZkValue *out);

// Derivative of the spectral zeta function of the integers at real `s`.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ZkStatus zk_zeta_z_deriv(const struct ZkContext *ctx, const char *s, struct ZkValue *out);

// Spectral zeta function of the discrete circle with `n` vertices. Integer
// arguments with a closed form come back exact.
//
// # Safety
// Pointers must be valid; strings NUL-terminated.
enum ZkStatus zk_zeta_zn(const struct ZkContext *ctx,
                         uint32_t n,
                         const char *re,
                         const char *im,
                         struct ZkValue *out);

// Volume of the unit sphere of dimension `n`.
//
// # Safety
// Pointers must be valid.
enum ZkStatus zk_sphere_volume(const struct ZkContext *ctx, uint32_t n, struct ZkValue *out);

// The Catalan number `C_m` in decimal.
//
// # Safety
// `out` must be a valid pointer.
enum ZkStatus zk_catalan(uint32_t m, char **out);

// The closed polynomial in `n` for the discrete circle at `s = m`, as text.
//
// # Safety
// `out` must be a valid pointer.
enum ZkStatus zk_closed_poly(uint32_t m, char **out);

// Run a verification suite (`"all"` or a suite name) and report how many
// checks passed and failed.
//
// # Safety
// Pointers must be valid; `suite` NUL-terminated.
enum ZkStatus zk_verify(const struct ZkContext *ctx,
                        const char *suite,
                        uint64_t seed,
                        uint32_t *passed,
                        uint32_t *failed);

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *zk_last_error(void);

// # Safety
// `s` must come from this library, or be null.
void zk_string_free(char *s);

// Release the strings inside `v` and null them.
//
// # Safety
// `v` must be null or point to a value filled by this library.
void zk_value_clear(struct ZkValue *v);

// Library version, statically allocated.
const char *zk_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETAKIT_H */
