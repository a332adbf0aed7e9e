/* Copyright 2026 The cellimit Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to cellimit. Every fallible call returns a cl_status; on
 * failure cl_last_error() holds a message for the calling thread. Strings
 * returned through char** are owned by the caller and released with
 * cl_string_free.
 */
#ifndef CELLIMIT_H_
#define CELLIMIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(CELLIMIT_BUILDING_LIBRARY)
#define CL_API __attribute__((visibility("default")))
#else
#define CL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  CL_OK = 0,
  CL_MARGIN_OUT_OF_RANGE = 1,
  CL_DIMENSION_ERROR = 2,
  CL_CELL_OUT_OF_RANGE = 3,
  CL_RESOURCE_LIMIT = 4,
  CL_DOMAIN_ERROR = 5,
  CL_SPEC_ERROR = 6,
  CL_UNCLASSIFIABLE = 7,
  CL_NO_CONVERGENCE = 8,
  CL_EMPTY_INPUT = 9,
  CL_INVALID_ARGUMENT = 10,
  CL_IO_ERROR = 11,
  CL_INTERNAL_ERROR = 12
} cl_status;

typedef enum { CL_EXACT = 0, CL_LOGFLOAT = 1 } cl_arithmetic;
typedef enum { CL_FORMAT_TEXT = 0, CL_FORMAT_CSV = 1, CL_FORMAT_JSON = 2 } cl_format;

typedef struct cl_margins cl_margins;
typedef struct cl_growth cl_growth;
typedef struct cl_pmf cl_pmf;

CL_API const char* cl_status_name(cl_status status);
CL_API const char* cl_last_error(void);
CL_API void cl_string_free(char* s);

/* Concrete margins. `cell` ("i,j,k") selects a cell of a table document and
 * must be NULL for a plain margin vector. */
CL_API cl_status cl_margins_create(int64_t n, const int64_t* a, size_t m, cl_margins** out);
CL_API cl_status cl_margins_from_json(const char* json, const char* cell, cl_margins** out);
CL_API void cl_margins_free(cl_margins* mv);
CL_API int64_t cl_margins_n(const cl_margins* mv);
CL_API size_t cl_margins_m(const cl_margins* mv);
/* i-th margin in ascending (canonical) order. */
CL_API int64_t cl_margins_a(const cl_margins* mv, size_t i);

/* Symbolic margins a_i(n) given as power sums. */
CL_API cl_status cl_growth_from_json(const char* json, const char* cell, cl_growth** out);
CL_API void cl_growth_free(cl_growth* g);
CL_API size_t cl_growth_m(const cl_growth* g);

/* Exact laws. In CL_EXACT mode the probabilities are rationals; cl_pmf_prob
 * returns them rounded to double. */
CL_API cl_status cl_cell_pmf(const cl_margins* mv, cl_arithmetic mode, cl_pmf** out);
CL_API cl_status cl_hypergeom_pmf(int64_t n, int64_t successes, int64_t draws, cl_arithmetic mode,
                                  cl_pmf** out);
CL_API void cl_pmf_free(cl_pmf* p);
CL_API int64_t cl_pmf_offset(const cl_pmf* p);
CL_API size_t cl_pmf_size(const cl_pmf* p);
CL_API double cl_pmf_prob(const cl_pmf* p, size_t i);
CL_API cl_status cl_pmf_render(const cl_pmf* p, cl_format format, char** out);

CL_API cl_status cl_moments(const cl_margins* mv, cl_format format, char** out);
/* Exact two-collector variance as "num/den". */
CL_API cl_status cl_variance_m2(int64_t n, int64_t a1, int64_t a2, char** out);

/* CL_FORMAT_TEXT or CL_FORMAT_JSON. */
CL_API cl_status cl_classify(const cl_growth* g, cl_format format, char** out);
CL_API cl_status cl_diagnose(const cl_growth* g, const int64_t* grid, size_t grid_len, cl_format format,
                             char** out);

/* Replication r uses RNG stream r of `seed`, so output does not depend on
 * `workers`. */
CL_API cl_status cl_simulate(const cl_margins* mv, uint64_t reps, uint64_t seed, unsigned workers,
                             char** histogram_csv, char** summary_json);
/* m collectors each missing one uniform coupon; statistic m - n + X_1. */
CL_API cl_status cl_birthday(int64_t n, int64_t m, uint64_t reps, uint64_t seed, unsigned workers,
                             char** histogram_csv, char** summary_json);

/* which is 2 or 3; grid may be NULL for the default 1e4, 1e6, 1e8. */
CL_API cl_status cl_example_table(int which, const int64_t* grid, size_t grid_len, unsigned workers,
                                  cl_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif /* CELLIMIT_H_ */
