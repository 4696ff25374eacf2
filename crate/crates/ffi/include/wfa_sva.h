#ifndef WFA_SVA_H
#define WFA_SVA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define WFA_OK 0

/**
 * A required pointer argument was null.
 */
#define WFA_ERR_NULL 1

/**
 * A string argument was not valid UTF-8.
 */
#define WFA_ERR_UTF8 2

/**
 * Malformed or invalid model, unknown symbol, alphabet mismatch.
 */
#define WFA_ERR_MODEL 3

/**
 * Argument out of range, or an output buffer is too small.
 */
#define WFA_ERR_RANGE 4

/**
 * The function is not square summable or a Gramian diverged.
 */
#define WFA_ERR_NEGATIVE 5

/**
 * Numerical failure (singular matrix, no convergence, ...).
 */
#define WFA_ERR_NUMERICAL 6

/**
 * Internal panic caught at the boundary.
 */
#define WFA_ERR_PANIC 7

/**
 * Opaque weighted automaton.
 */
typedef struct WfaModel WfaModel;

/**
 * Opaque singular value automaton together with its singular values.
 */
typedef struct WfaSva WfaSva;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or null. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *wfa_last_error(void);

/**
 * Parses a JSON model document (strict mode).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
int32_t wfa_model_from_json(const char *json, struct WfaModel **out);

/**
 * Serializes a model; free the result with [`wfa_string_free`].
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t wfa_model_to_json(const struct WfaModel *model, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void wfa_string_free(char *s);

/**
 * # Safety
 * `model` must come from this library or be null; it must not be used afterwards.
 */
void wfa_model_free(struct WfaModel *model);

/**
 * Number of states.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t wfa_model_states(const struct WfaModel *model, size_t *out);

/**
 * Alphabet size.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t wfa_model_alphabet_size(const struct WfaModel *model, size_t *out);

/**
 * Evaluates on a word given as symbol indices.
 *
 * # Safety
 * `word` must point to `len` readable indices (may be null when `len` is 0).
 */
int32_t wfa_eval(const struct WfaModel *model, const size_t *word, size_t len, double *out);

/**
 * Evaluates on a word written as a string of symbols.
 *
 * # Safety
 * `word` must be a nul-terminated string.
 */
int32_t wfa_eval_string(const struct WfaModel *model, const char *word, double *out);

/**
 * Minimal equivalent automaton.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t wfa_minimize(const struct WfaModel *model, struct WfaModel **out);

/**
 * ℓ² norm; `WFA_ERR_NEGATIVE` when it is infinite.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t wfa_norm_l2(const struct WfaModel *model, double *out);

/**
 * ℓ² distance between two models over the same alphabet.
 *
 * # Safety
 * Both handles must be live; `out` must be writable.
 */
int32_t wfa_distance_l2(const struct WfaModel *a, const struct WfaModel *b, double *out);

/**
 * Square-summability test. Writes 1 or 0 to `member` and the decisive
 * spectral radius to `witness` (which may be null).
 *
 * # Safety
 * `model` must be a live handle; `member` must be writable.
 */
int32_t wfa_check_l2(const struct WfaModel *model, int32_t *member, double *witness);

/**
 * Both Gramians, row-major, into buffers of at least `n * n` doubles.
 *
 * # Safety
 * `gp` and `gs` must each point to `capacity` writable doubles.
 */
int32_t wfa_gramians(const struct WfaModel *model, double *gp, double *gs, size_t capacity);

/**
 * Singular value automaton of the function computed by `model`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be writable.
 */
int32_t wfa_sva_compute(const struct WfaModel *model, struct WfaSva **out);

/**
 * # Safety
 * `s` must come from this library or be null; it must not be used afterwards.
 */
void wfa_sva_free(struct WfaSva *s);

/**
 * Number of states of the balanced automaton.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t wfa_sva_dim(const struct WfaSva *s, size_t *out);

/**
 * Copies the singular values (descending) into `buf`; `len` receives their
 * count even when `capacity` is too small.
 *
 * # Safety
 * `buf` must point to `capacity` writable doubles; `len` must be writable.
 */
int32_t wfa_sva_sigmas(const struct WfaSva *s, double *buf, size_t capacity, size_t *len);

/**
 * The balanced automaton as a new model handle.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t wfa_sva_model(const struct WfaSva *s, struct WfaModel **out);

/**
 * Truncation to `n_hat` states. `bound` (may be null) receives the sum of
 * the squared dropped singular values.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t wfa_sva_truncate(const struct WfaSva *s,
                         size_t n_hat,
                         struct WfaModel **out,
                         double *bound);

/**
 * Exact squared ℓ² error of the truncation to `n_hat` states.
 *
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
int32_t wfa_sva_exact_error_sq(const struct WfaSva *s, size_t n_hat, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WFA_SVA_H */
