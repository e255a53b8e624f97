/* Copyright 2026 The weillab Authors
 * SPDX-License-Identifier: Apache-2.0 */

#ifndef WEILLAB_WEILLAB_H
#define WEILLAB_WEILLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(WEILLAB_BUILDING)
#    define WL_API __declspec(dllexport)
#  else
#    define WL_API __declspec(dllimport)
#  endif
#else
#  define WL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values are stable; new codes are only appended. */
typedef enum wl_status {
  WL_OK = 0,
  WL_INVALID_ARGUMENT = 1,
  WL_NON_PRIME = 2,
  WL_EVEN_CHARACTERISTIC = 3,
  WL_REDUCIBLE = 4,
  WL_FIELD_MISMATCH = 5,
  WL_DIVISION_BY_ZERO = 6,
  WL_NOT_IN_BASE_IMAGE = 7,
  WL_TABLE_LIMIT_EXCEEDED = 8,
  WL_ZERO_POLYNOMIAL = 9,
  WL_ZERO_ARGUMENT = 10,
  WL_TRIVIAL_CHARACTER = 11,
  WL_DEGREE_DIVISIBLE_BY_P = 12,
  WL_NOT_RATIONAL = 13,
  WL_BUDGET_EXCEEDED = 14,
  WL_HYPOTHESIS_VIOLATION = 15,
  WL_CRITICAL_DATA_UNAVAILABLE = 16,
  WL_DEGENERATE_DERIVATIVE = 17,
  WL_MATRIX_TOO_LARGE = 18,
  WL_NOT_QUASI_ODD = 19,
  WL_NO_SOLUTION = 20,
  WL_NOT_DIVISIBLE = 21,
  WL_ROOT_FINDING_UNSTABLE = 22,
  WL_NON_INTEGER_MULTIPLICITY = 23,
  WL_DIVISIBILITY_VIOLATION = 24,
  WL_INTERNAL = 25
} wl_status;

/* Stable name of a status ("ok", "budgetExceeded", ...). */
WL_API const char* wl_status_name(wl_status s);

/* Message of the last failing call on this thread ("" after success). */
WL_API const char* wl_last_error(void);

/* Every char* result is a NUL-terminated JSON document owned by the
 * caller; release it with wl_string_free. */
WL_API void wl_string_free(char* s);

WL_API const char* wl_version(void);

/* Execution context: enumeration budget (points) and worker threads.
 * wl_context_new applies WEILLAB_BUDGET when set. */
typedef struct wl_context wl_context;
WL_API wl_status wl_context_new(wl_context** out);
WL_API void wl_context_free(wl_context* ctx);
WL_API wl_status wl_context_set_budget(wl_context* ctx, uint64_t budget);
WL_API wl_status wl_context_set_threads(wl_context* ctx, unsigned threads);
WL_API uint64_t wl_context_budget(const wl_context* ctx);

/* F_{p^e}. modulus (constant first, monic, length e+1) may be NULL for the
 * lexicographically first irreducible. */
typedef struct wl_field wl_field;
WL_API wl_status wl_field_new(uint32_t p, uint32_t e, const int64_t* modulus, size_t modulus_len, wl_field** out);
WL_API void wl_field_free(wl_field* f);
WL_API wl_status wl_field_info(const wl_field* f, char** json_out);

/* Polynomial over a field, from the canonical JSON schema
 * {"p","e","modulus"?,"coeffs":[[..],..]} or {"p","e","n","terms":[..]}. */
typedef struct wl_poly wl_poly;
WL_API wl_status wl_poly_from_json(const char* json, wl_poly** out);
WL_API void wl_poly_free(wl_poly* f);
WL_API wl_status wl_poly_to_json(const wl_poly* f, char** json_out);
WL_API uint32_t wl_poly_degree(const wl_poly* f);
WL_API uint32_t wl_poly_nvars(const wl_poly* f);

typedef enum wl_count_method {
  WL_COUNT_CHARSUM = 0,
  WL_COUNT_TRACE_KERNEL = 1,
  WL_COUNT_NAIVE = 2,
  WL_COUNT_ALL = 3
} wl_count_method;

/* Points on y^q - y = f(x) over F_{q^r}; psi_shift (a coordinate vector of
 * length e, or NULL) selects the additive character for the charsum
 * method. */
WL_API wl_status wl_count(const wl_context* ctx, const wl_poly* f, uint32_t r, wl_count_method method,
                          const int64_t* psi_shift, char** json_out);
/* Same count as an integer (fails if it does not fit in 64 bits). */
WL_API wl_status wl_count_value(const wl_context* ctx, const wl_poly* f, uint32_t r, wl_count_method method,
                                uint64_t* out);

/* Monodromy classification (univariate) or multivariate checks. */
WL_API wl_status wl_classify(const wl_context* ctx, const wl_poly* f, uint32_t r, char** json_out);
WL_API wl_status wl_verify(const wl_context* ctx, const wl_poly* f, uint32_t r, char** json_out);

/* L-function pipeline; depth 0 picks the default depth. */
WL_API wl_status wl_lfunction(const wl_context* ctx, const wl_poly* f, uint32_t r, uint32_t depth, char** json_out);
WL_API wl_status wl_functional_equation(const wl_context* ctx, const wl_poly* f, uint32_t r, uint32_t depth,
                                        char** json_out);
WL_API wl_status wl_power_sums(const wl_context* ctx, const wl_poly* f, uint32_t r, uint32_t m_max, char** json_out);

/* Gauss sum g(chi, psi_a) for chi of the given order (dividing q-1) and
 * exponent; shift NULL means a = 1. */
WL_API wl_status wl_gauss(const wl_field* f, uint32_t order, uint32_t exponent, const int64_t* shift,
                          char** json_out);

/* Closed forms: constant C_{d,r} (with rank (d-1)^n), classical bounds and
 * multiplicities. */
WL_API wl_status wl_constant(uint32_t d, uint32_t r, uint32_t n, char** json_out);
WL_API wl_status wl_hodge(uint32_t d, uint32_t n, char** json_out);

/* Sweep from a grid JSON {"qs","ds","rs","n"?,"family"?,"samples"?,"seed"?,
 * "requireSumNonsingular"?}. With out_dir non-NULL the JSON and CSV
 * reports are written there and their paths are added to the result. */
WL_API wl_status wl_sweep(const wl_context* ctx, const char* grid_json, const char* out_dir, char** json_out);
/* The same sweep rendered as CSV (header line plus one row per item). */
WL_API wl_status wl_sweep_csv(const wl_context* ctx, const char* grid_json, char** csv_out);

/* Kummer curve y^{(q-1)/e} = f(x) over F_{q^r}; the sweep covers all
 * shift-canonical monic f of degree d. */
WL_API wl_status wl_kummer(const wl_context* ctx, const wl_poly* f, uint32_t e, uint32_t r, char** json_out);
WL_API wl_status wl_kummer_sweep(const wl_context* ctx, const wl_field* f, uint32_t d, uint32_t e, uint32_t r,
                                 char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* WEILLAB_WEILLAB_H */
