/*
   Copyright 2026 The fuzzyprok Authors

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
 * C interface to libfuzzyprok.
 *
 * Objects are opaque handles created by fp_*_create/parse functions and
 * released with the matching fp_*_free. Every fallible call returns an
 * fp_status; on failure a description is available from fp_last_error()
 * (thread-local, valid until the next call on the same thread).
 *
 * Strings returned through `char **` are allocated by the library and must
 * be released with fp_string_free().
 */

#ifndef FUZZYPROK_H_
#define FUZZYPROK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FUZZYPROK_BUILDING)
#    define FP_API __declspec(dllexport)
#  else
#    define FP_API __declspec(dllimport)
#  endif
#else
#  define FP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fp_status {
  FP_OK = 0,
  FP_ERR_NULL_ARGUMENT = 1,
  FP_ERR_DOMAIN = 2,         /* value outside its domain (r, t, weights) */
  FP_ERR_INDEX = 3,          /* point index or label does not resolve */
  FP_ERR_SCHEMA = 4,         /* malformed JSON input */
  FP_ERR_LIMIT = 5,          /* brute-force support cap exceeded */
  FP_ERR_SPACE_MISMATCH = 6, /* operands live on different spaces */
  FP_ERR_VALIDATION = 7,     /* constructed metric failed the axioms */
  FP_ERR_INTERNAL = 99
} fp_status;

typedef enum fp_method { FP_METHOD_FLOW = 0, FP_METHOD_BRUTE = 1 } fp_method;

typedef struct fp_space fp_space;
typedef struct fp_measure fp_measure;

FP_API const char* fp_last_error(void);
FP_API const char* fp_status_name(fp_status status);
FP_API void fp_string_free(char* s);

/* ---- t-norm -------------------------------------------------------- */

FP_API fp_status fp_luk(double a, double b, double* out);

/* ---- spaces -------------------------------------------------------- */

FP_API fp_status fp_space_parse(const char* json, fp_space** out);
FP_API fp_status fp_space_standard(const char* const* labels, size_t n,
                                   const double* dist_row_major,
                                   fp_space** out);
FP_API void fp_space_free(fp_space* space);
FP_API size_t fp_space_size(const fp_space* space);
/* Borrowed pointer, valid while the space lives; NULL if out of range. */
FP_API const char* fp_space_label(const fp_space* space, size_t i);
FP_API fp_status fp_space_write(const fp_space* space, char** json_out);
/* Borrowed view of a table-generated space's t grid; *n_out = 0 for the
   closed-form generators. */
FP_API fp_status fp_space_t_grid(const fp_space* space, const double** grid_out,
                                 size_t* n_out);

FP_API fp_status fp_membership(const fp_space* space, size_t i, size_t j,
                               double t, double* out);
FP_API fp_status fp_in_ball(const fp_space* space, size_t center, size_t y,
                            double r, double t, int* out);

/* Writes the sorted neighborhood A^{r,t} into `out` (capacity >= size of
   the space) and its length into `out_len`. */
FP_API fp_status fp_neighborhood(const fp_space* space, const size_t* a,
                                 size_t a_len, double r, double t,
                                 size_t* out, size_t* out_len);

/* `violations` receives the total count; `report_json` may be NULL. */
FP_API fp_status fp_validate(const fp_space* space, const double* t_samples,
                             size_t n_samples, size_t* violations,
                             char** report_json);

/* f maps source point i to target point f[i]. On a failed check
   witness = {x, y} and *witness_t are set; both may be NULL. */
FP_API fp_status fp_check_nonexpanding(const fp_space* source,
                                       const fp_space* target,
                                       const size_t* f, size_t f_len,
                                       const double* t_samples,
                                       size_t n_samples, int* nonexpanding,
                                       size_t witness[2], double* witness_t);

/* ---- measures ------------------------------------------------------ */

FP_API fp_status fp_measure_parse(const fp_space* space, const char* json,
                                  fp_measure** out);
FP_API fp_status fp_measure_create(const fp_space* space, const size_t* points,
                                   const double* weights, size_t n,
                                   fp_measure** out);
FP_API fp_status fp_measure_dirac(const fp_space* space, size_t x,
                                  fp_measure** out);
FP_API void fp_measure_free(fp_measure* mu);
FP_API size_t fp_measure_support_size(const fp_measure* mu);
FP_API fp_status fp_measure_weight(const fp_measure* mu, size_t i,
                                   double* out);
FP_API fp_status fp_mass(const fp_measure* mu, const size_t* a, size_t a_len,
                         double* out);
FP_API fp_status fp_pushforward(const size_t* f, size_t f_len,
                                const fp_space* target, const fp_measure* mu,
                                fp_measure** out);
FP_API fp_status fp_total_variation(const fp_measure* mu,
                                    const fp_measure* nu, double* out);
FP_API fp_status fp_sample_empirical(const fp_measure* mu, size_t n,
                                     uint64_t seed, fp_measure** out);
/* psi: mixture sum_k alphas[k] * components[k]. */
FP_API fp_status fp_flatten(const double* alphas,
                            const fp_measure* const* components, size_t n,
                            fp_measure** out);

/* ---- fuzzy Prokhorov metric ----------------------------------------- */

typedef struct fp_result {
  double value;
  double r_star;
  fp_method method;
} fp_result;

/* brute_cap bounds |supp(mu)| + |supp(nu)| for FP_METHOD_BRUTE (0 selects
   the default of 20). `json_out` may be NULL; otherwise it receives
   {"value", "r_star", "method", "witness"}. */
FP_API fp_status fp_prokhorov(const fp_measure* mu, const fp_measure* nu,
                              double t, fp_method method, size_t brute_cap,
                              fp_result* out, char** json_out);

FP_API fp_status fp_feasible(const fp_measure* mu, const fp_measure* nu,
                             double r, double t, int* out);

/* Fills t_out[steps] and value_out[steps]; either may be NULL.
   `csv_out` may be NULL; otherwise it receives the `t,m_hat` CSV. */
FP_API fp_status fp_curve(const fp_measure* mu, const fp_measure* nu,
                          double t_min, double t_max, size_t steps,
                          fp_method method, double* t_out, double* value_out,
                          char** csv_out);

typedef struct fp_convergence_row {
  size_t n;
  double gap;
  double total_variation;
  int within_tv;
} fp_convergence_row;

/* rows_out has room for n_schedule rows; csv_out may be NULL. */
FP_API fp_status fp_convergence(const fp_measure* mu, const size_t* schedule,
                                size_t n_schedule, double t, uint64_t seed,
                                fp_convergence_row* rows_out, char** csv_out);

typedef struct fp_psi_summary {
  size_t trials;
  size_t violations;
  double max_excess;
} fp_psi_summary;

FP_API fp_status fp_psi_probe(const fp_space* space, size_t trials,
                              uint64_t seed, double t, fp_psi_summary* out,
                              char** table_out);

/* ---- extension ---------------------------------------------------- */

/* Parses a `log:<min>:<max>:<count>` or comma-list spec. The array is
   allocated by the library; free it with fp_grid_free. */
FP_API fp_status fp_parse_t_grid(const char* spec, double** grid_out,
                                 size_t* n_out);
FP_API void fp_grid_free(double* grid);

/* ambient_json: label array, or {"labels": [...], "assignment": {...}}.
   A NULL grid selects the default (32 log-spaced scales in [0.01, 100]). */
FP_API fp_status fp_extend(const fp_space* subspace, const char* ambient_json,
                           const double* t_grid, size_t n_grid,
                           fp_space** out);

/* A NULL label selects "⊥". A NULL grid selects the table grid of a
   table-generated space and the default grid otherwise. */
FP_API fp_status fp_adjoin_terminal(const fp_space* space,
                                    const double* t_grid, size_t n_grid,
                                    const char* label, fp_space** out);

#ifdef __cplusplus
}
#endif

#endif /* FUZZYPROK_H_ */
