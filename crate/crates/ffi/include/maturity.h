#ifndef MATURITY_H
#define MATURITY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MaturityStatus {
  MATURITY_STATUS_OK = 0,
  MATURITY_STATUS_NULL_POINTER = 1,
  MATURITY_STATUS_INVALID_ARGUMENT = 2,
  MATURITY_STATUS_PARSE_ERROR = 3,
  MATURITY_STATUS_ZERO_PROBABILITY_HISTORY = 4,
  MATURITY_STATUS_HISTORY_FULL = 5,
  MATURITY_STATUS_APPROXIMATE_PRIOR = 6,
  MATURITY_STATUS_INTERNAL = 7,
} MaturityStatus;

typedef enum MaturityVerdict {
  MATURITY_VERDICT_TIGHTER = 0,
  MATURITY_VERDICT_LOOSER = 1,
  MATURITY_VERDICT_BINOMIAL_BOUNDARY = 2,
  MATURITY_VERDICT_MIXED = 3,
  MATURITY_VERDICT_NOT_SYMMETRIC = 4,
  MATURITY_VERDICT_INDETERMINATE = 5,
} MaturityVerdict;

/**
 * Opaque prior handle.
 */
typedef struct MaturityPrior MaturityPrior;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Binomial(n, p) with `p` given as a rational string such as "1/3".
 *
 * # Safety
 * `p` must be a NUL-terminated string and `out` a writable pointer.
 */
enum MaturityStatus maturity_prior_binomial(size_t n, const char *p, struct MaturityPrior **out);

/**
 * Beta-Binomial(n, alpha, beta).
 *
 * # Safety
 * String arguments must be NUL-terminated and `out` writable.
 */
enum MaturityStatus maturity_prior_beta_binomial(size_t n,
                                                 const char *alpha,
                                                 const char *beta,
                                                 struct MaturityPrior **out);

/**
 * CMP-Binomial(n, p, nu) at the default precision.
 *
 * # Safety
 * String arguments must be NUL-terminated and `out` writable.
 */
enum MaturityStatus maturity_prior_cmp(size_t n,
                                       const char *p,
                                       const char *nu,
                                       struct MaturityPrior **out);

/**
 * Count of ones among `n` members drawn from `total` members with `ones`
 * ones.
 *
 * # Safety
 * `out` must be writable.
 */
enum MaturityStatus maturity_prior_hypergeometric(size_t total,
                                                  size_t ones,
                                                  size_t n,
                                                  struct MaturityPrior **out);

/**
 * Point mass at `g`.
 *
 * # Safety
 * `out` must be writable.
 */
enum MaturityStatus maturity_prior_degenerate(size_t n, size_t g, struct MaturityPrior **out);

/**
 * Uniform on 0..=n.
 *
 * # Safety
 * `out` must be writable.
 */
enum MaturityStatus maturity_prior_uniform(size_t n, struct MaturityPrior **out);

/**
 * Prior from a JSON document `{"N": .., "pmf": ["num/den", ..]}`.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` writable.
 */
enum MaturityStatus maturity_prior_from_json(const char *json, struct MaturityPrior **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `prior` must come from a constructor above and not be used afterwards.
 */
void maturity_prior_free(struct MaturityPrior *prior);

/**
 * Population size N.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_prior_size(const struct MaturityPrior *prior, size_t *out);

/**
 * Nonzero when the prior holds exact probabilities.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_prior_is_exact(const struct MaturityPrior *prior, int32_t *out);

/**
 * P(next = 1 | `s` ones in `n` trials) as a `"num/den"` string.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_predictive(const struct MaturityPrior *prior,
                                        size_t n,
                                        size_t s,
                                        char **out);

/**
 * Probability of one particular sequence with `s` ones in `n` trials.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_sequence_probability(const struct MaturityPrior *prior,
                                                  size_t n,
                                                  size_t s,
                                                  char **out);

/**
 * Streak hazard r(m).
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_streak_hazard(const struct MaturityPrior *prior, size_t m, char **out);

/**
 * First-order tightness against Binomial(N, 1/2).
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_tightness(const struct MaturityPrior *prior,
                                       enum MaturityVerdict *out);

/**
 * Second-order tightness against the Binomial.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_second_order(const struct MaturityPrior *prior,
                                          enum MaturityVerdict *out);

/**
 * Full classification report as JSON.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_classify_json(const struct MaturityPrior *prior, char **out);

/**
 * Extendibility profile for M = 1..=`max_extra` as JSON.
 *
 * # Safety
 * `prior` must be a live handle and `out` writable.
 */
enum MaturityStatus maturity_extend_json(const struct MaturityPrior *prior,
                                         size_t max_extra,
                                         char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `text` must come from this library and not be used afterwards.
 */
void maturity_string_free(char *text);

/**
 * Message for the last failed call on this thread, or an empty string. The
 * pointer stays valid until the next call on the same thread.
 */
const char *maturity_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MATURITY_H */
