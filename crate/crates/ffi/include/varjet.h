#ifndef VARJET_H
#define VARJET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum VarjetFormat {
  VARJET_FORMAT_CANONICAL = 0,
  VARJET_FORMAT_LATEX = 1,
  VARJET_FORMAT_JSON = 2,
} VarjetFormat;

typedef enum VarjetStatus {
  VARJET_STATUS_OK = 0,
  VARJET_STATUS_NULL_ARGUMENT = 1,
  VARJET_STATUS_INVALID_UTF8 = 2,
  VARJET_STATUS_PARSE_ERROR = 3,
  VARJET_STATUS_EXPR_ERROR = 4,
  VARJET_STATUS_NOT_NULL = 5,
  VARJET_STATUS_INTEGRATION_UNSUPPORTED = 6,
  VARJET_STATUS_NONEXACT_TOP = 7,
  VARJET_STATUS_UNSUPPORTED_ORDER = 8,
  VARJET_STATUS_RESERVED_PARAMETER = 9,
  VARJET_STATUS_MISSING_ATOM = 10,
  VARJET_STATUS_NUMERIC_SINGULARITY = 11,
  VARJET_STATUS_PANIC = 12,
} VarjetStatus;

/**
 * Opaque expression handle.
 */
typedef struct VarjetExpr VarjetExpr;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread; empty after a
 * success. Valid until the next `varjet_*` call on the same thread.
 */
const char *varjet_last_error_message(void);

/**
 * Parses `src` in the expression grammar into a new handle.
 *
 * # Safety
 * `src` must be a nul-terminated string and `out` a valid pointer.
 */
enum VarjetStatus varjet_parse(const char *src, struct VarjetExpr **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `e` must come from this library and not have been freed.
 */
void varjet_expr_free(struct VarjetExpr *e);

/**
 * Copies a handle.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_expr_clone(const struct VarjetExpr *e, struct VarjetExpr **out);

/**
 * Whether two handles hold the same canonical expression.
 *
 * # Safety
 * `a` and `b` must be live handles and `out` a valid pointer.
 */
enum VarjetStatus varjet_expr_equal(const struct VarjetExpr *a,
                                    const struct VarjetExpr *b,
                                    bool *out);

/**
 * Renders `e`; the string is released with `varjet_string_free`.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_render(const struct VarjetExpr *e, enum VarjetFormat format, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from `varjet_render` and not have been freed.
 */
void varjet_string_free(char *s);

/**
 * Euler-Lagrange expression of `l`.
 *
 * # Safety
 * `l` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_euler_lagrange(const struct VarjetExpr *l, struct VarjetExpr **out);

/**
 * Jacobi integral of `l`.
 *
 * # Safety
 * `l` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_jacobi(const struct VarjetExpr *l, struct VarjetExpr **out);

/**
 * `k`-fold total time derivative.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_total_derivative(const struct VarjetExpr *e,
                                          uint32_t k,
                                          struct VarjetExpr **out);

/**
 * Gauge `P` with `D_t P = l`; fails with `NotNull` when `l` is not a null
 * Lagrangian.
 *
 * # Safety
 * `l` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_extract_gauge(const struct VarjetExpr *l, struct VarjetExpr **out);

/**
 * # Safety
 * `l` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_is_null(const struct VarjetExpr *l, bool *out);

/**
 * SL(2,R) invariance by prolongation residues.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_sl2_invariant(const struct VarjetExpr *e, bool *out);

/**
 * Built-in Lagrangian by family name (`presch`, `L2`, `sigma`,
 * `schippers`); `order` is ignored for the first two.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum VarjetStatus varjet_builtin(const char *name, uint32_t order, struct VarjetExpr **out);

/**
 * Evaluates `e` at `q^(k) = jets[k]` for `k < n_jets`, time `t` and the
 * named parameters.
 *
 * # Safety
 * `jets` must point to `n_jets` doubles; `names` and `values` to `n_params`
 * entries each (either may be null when the count is zero); `out` must be
 * a valid pointer.
 */
enum VarjetStatus varjet_eval(const struct VarjetExpr *e,
                              double t,
                              const double *jets,
                              size_t n_jets,
                              const char *const *names,
                              const double *values,
                              size_t n_params,
                              double *out);

/**
 * Highest jet order in `e`, or -1 when `e` is jet-free.
 *
 * # Safety
 * `e` must be a live handle and `out` a valid pointer.
 */
enum VarjetStatus varjet_jet_order(const struct VarjetExpr *e, int64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VARJET_H */
