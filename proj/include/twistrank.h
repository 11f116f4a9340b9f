/*
  Copyright (c) 2026 the twistrank project

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

/*
  C interface to the twistrank shared library.

  Conventions:
    - every function returns a tr_status; TR_OK means success
    - results come back through out-parameters, handles are opaque
    - strings returned through char** are heap-allocated by the library
      and must be released with tr_string_free()
    - tr_last_error_message() gives thread-local detail for the most
      recent failure
    - exact rationals cross the boundary as decimal strings, "num" or
      "num/den"
*/

#ifndef TWISTRANK_H
#define TWISTRANK_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tr_status {
  TR_OK = 0,
  TR_ERR_INVALID_ARGUMENT = 1,
  TR_ERR_BUDGET_EXCEEDED = 2,
  TR_ERR_NOT_SQUAREFREE = 3,
  TR_ERR_POINT_NOT_ON_CURVE = 4,
  TR_ERR_MISSING_WITNESS = 5,
  TR_ERR_PARSE = 6,
  TR_ERR_IO = 7,
  TR_ERR_INTERNAL = 8
} tr_status;

typedef struct tr_intset tr_intset;
typedef struct tr_curve tr_curve;
typedef struct tr_twistset tr_twistset;
typedef struct tr_para tr_para;
typedef struct tr_paralist tr_paralist;
typedef struct tr_cert tr_cert;

const char* tr_version(void);
const char* tr_status_name(tr_status status);
/* Thread-local message for the most recent failing call. */
const char* tr_last_error_message(void);
void tr_string_free(char* s);

/* ---- finite integer sets ---------------------------------------- */

tr_status tr_intset_from_array(const uint64_t* elements, size_t count,
                               uint64_t universe /* 0 = max element */,
                               tr_intset** out);
tr_status tr_intset_interval(uint64_t lo, uint64_t hi, tr_intset** out);
tr_status tr_intset_load(const char* path, tr_intset** out);
tr_status tr_intset_save(const tr_intset* set, const char* path,
                         const char* config_json /* may be NULL */);
tr_status tr_intset_size(const tr_intset* set, uint64_t* out);
tr_status tr_intset_universe(const tr_intset* set, uint64_t* out);
tr_status tr_intset_contains(const tr_intset* set, uint64_t n, int* out);
tr_status tr_intset_coprime_filter(const tr_intset* set,
                                   const char* m_decimal, tr_intset** out);
tr_status tr_intset_divide(const tr_intset* set, uint64_t m, tr_intset** out);
tr_status tr_intset_intersect(const tr_intset* a, const tr_intset* b,
                              tr_intset** out);
tr_status tr_intset_union(const tr_intset* a, const tr_intset* b,
                          tr_intset** out);
void tr_intset_free(tr_intset* set);

/* ---- density functionals ----------------------------------------- */

tr_status tr_f_value(const tr_intset* set, double t, double* out);
tr_status tr_f_upper_bound(double t, double* out);
tr_status tr_smoothed_density(const tr_intset* set, double T, double* value,
                              double* truncation_error_bound);
tr_status tr_lower_density_estimate(const tr_intset* set, uint64_t n0,
                                    double* out);
tr_status tr_sieve_bound_check(const tr_intset* set, int64_t a, int64_t b,
                               double t, double* lhs, double* rhs,
                               int* holds);
tr_status tr_bonferroni_check(const tr_intset* const* sets, size_t count,
                              double t, double* union_f, double* sum_f,
                              double* pairwise_f, int* upper_holds,
                              int* lower_holds);

/* ---- curves and twist witnesses ----------------------------------- */

/* Long Weierstrass coefficients a1, a2, a3, a4, a6 as rational strings. */
tr_status tr_curve_create(const char* a1, const char* a2, const char* a3,
                          const char* a4, const char* a6, tr_curve** out);
/* The built-in conductor-19 base model. */
tr_status tr_curve_default(tr_curve** out);
tr_status tr_curve_discriminant(const tr_curve* curve, char** out);
void tr_curve_free(tr_curve* curve);

/* Naive-height witness search on the twist of `base` by squarefree d.
   *found is 1 and x/y are set when a non-torsion point turns up. */
tr_status tr_twist_search_witness(const tr_curve* base, const char* d,
                                  uint64_t bound, int* found, char** x,
                                  char** y);

/* Called after each squarefree d is resolved (serialized); x and y are
   NULL unless the status carries a point. */
typedef void (*tr_progress_fn)(uint64_t d, int has_point, const char* x,
                               const char* y, void* user);

/* Rank oracle sweep over squarefree d <= bound. table_path and
   parity_conductor may be NULL; conductor defaults to 19. search_bound 0
   means table-only (no naive search). progress may be NULL. */
tr_status tr_compute_twist_set(const tr_curve* base, uint64_t bound,
                               uint64_t search_bound, const char* table_path,
                               int parity_filter,
                               const char* parity_conductor,
                               int base_root_number, unsigned threads,
                               tr_progress_fn progress, void* progress_user,
                               tr_twistset** out);
tr_status tr_twistset_derived(const tr_twistset* tw, tr_intset** out);
tr_status tr_twistset_density(const tr_twistset* tw, double* out);
/* Writes the derived set file and the witness store (rank table). */
tr_status tr_twistset_save(const tr_twistset* tw, const char* set_path,
                           const char* witness_path,
                           const char* config_json /* may be NULL */);
void tr_twistset_free(tr_twistset* tw);

/* ---- parallelepiped search ---------------------------------------- */

tr_status tr_find_brute(const tr_intset* set, unsigned n,
                        size_t max_level_objects /* 0 = default */,
                        size_t max_results /* 0 = unlimited */,
                        tr_paralist** out);
tr_status tr_paralist_count(const tr_paralist* list, size_t* out);
/* The returned handle is owned by the caller. */
tr_status tr_paralist_get(const tr_paralist* list, size_t index,
                          tr_para** out);
void tr_paralist_free(tr_paralist* list);

/* policy is "heuristic" or "rigorous". On success *found = 1 and *out is
   set; on exhaustion *found = 0 and *report carries the reason. The
   search trace is appended to *report either way. */
tr_status tr_find_guided(const tr_intset* set, unsigned n,
                         const char* policy, uint64_t window_a,
                         uint64_t window_b, uint64_t universe_floor,
                         const uint64_t* sigma, size_t sigma_count,
                         int* found, tr_para** out, char** report);

tr_status tr_para_dimension(const tr_para* para, unsigned* out);
/* "c=<rational>; gens=<...>; elements=<...>" */
tr_status tr_para_format(const tr_para* para, char** out);
void tr_para_free(tr_para* para);

/* ---- certificates -------------------------------------------------- */

tr_status tr_build_certificate(const tr_twistset* tw, const tr_para* para,
                               const char* metadata_json /* may be NULL */,
                               tr_cert** out);
tr_status tr_cert_load(const char* path, tr_cert** out);
tr_status tr_cert_save(const tr_cert* cert, const char* path);
/* *valid is 1/0; *violations is a newline-joined list (empty if valid). */
tr_status tr_cert_verify(const tr_cert* cert, int* valid, char** violations);
void tr_cert_free(tr_cert* cert);

/* ---- proof-inequality diagnostics ---------------------------------- */

/* product_form_ok covers every row the source analysis calls
   unconditional (including its sieve bound, which genuinely fails at
   finite scale); strict_rows_ok covers the provably unconditional
   subset and holds for every input. */
tr_status tr_diagnose(const tr_intset* set, int64_t a, int64_t b, double T,
                      int* product_form_ok, int* strict_rows_ok,
                      char** report);

#ifdef __cplusplus
}
#endif

#endif /* TWISTRANK_H */
