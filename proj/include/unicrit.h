#ifndef UNICRIT_H
#define UNICRIT_H

#include <stddef.h>

#if defined(UNICRIT_BUILDING)
#define UC_API __attribute__((visibility("default")))
#else
#define UC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uc_status {
  UC_OK = 0,
  UC_ERR_INVALID_ARGUMENT,
  UC_ERR_PARSE,
  UC_ERR_DIVISION_BY_ZERO,
  UC_ERR_FIELD_MISMATCH,
  UC_ERR_PRECONDITION,
  UC_ERR_BUDGET_EXCEEDED,
  UC_ERR_OVERFLOW_BUDGET,
  UC_ERR_UNSUPPORTED_FIELD,
  UC_ERR_UNDECIDED,
  UC_ERR_INTERNAL
} uc_status;

typedef struct uc_field uc_field;
typedef struct uc_map uc_map;

/* Resource caps; a NULL options pointer means the defaults. */
typedef struct uc_options {
  unsigned long long candidate_cap;
  unsigned long long coord_bits_cap;
} uc_options;

UC_API void uc_options_default(uc_options* opts);

UC_API const char* uc_version(void);
UC_API const char* uc_status_name(uc_status status);
/* Message of the last failed call on this thread. */
UC_API const char* uc_last_error(void);
UC_API void uc_string_free(char* s);

/* K = Q[x]/(m); "x" gives Q. */
UC_API uc_status uc_field_create(const char* min_poly, uc_field** out);
UC_API void uc_field_free(uc_field* field);
UC_API int uc_field_degree(const uc_field* field);

/* x^d + c with c written as "a0/b0,a1/b1,..." in the power basis. */
UC_API uc_status uc_map_create(const uc_field* field, unsigned long d, const char* c, uc_map** out);
UC_API void uc_map_free(uc_map* map);

/* Every function below returns a newly allocated string in *out, to be
 * released with uc_string_free. */
UC_API uc_status uc_preperiodic_json(const uc_map* map, const uc_options* opts, char** out);
UC_API uc_status uc_portrait_json(const uc_map* map, const uc_options* opts, char** out);
UC_API uc_status uc_portrait_dot(const uc_map* map, const uc_options* opts, char** out);
UC_API uc_status uc_skeleton_json(const uc_map* map, const uc_options* opts, char** out);
UC_API uc_status uc_skeleton_dot(const uc_map* map, const uc_options* opts, char** out);
UC_API uc_status uc_classify_json(const uc_map* map, const uc_options* opts, char** out);
/* primes: comma-separated finite primes of S, or "" for the archimedean places only. */
UC_API uc_status uc_theorem1_json(const uc_map* map, const char* primes, const uc_options* opts, char** out);
UC_API uc_status uc_scan_json(const uc_field* field, unsigned long d, long c_lo, long c_hi, unsigned jobs,
                              const uc_options* opts, char** out);
UC_API uc_status uc_stability_json(const uc_map* map, unsigned long horizon, const uc_options* opts, char** out);

/* generators: coefficients separated by ';', all of degree d. */
UC_API uc_status uc_irreducible_json(const uc_field* field, unsigned long d, const char* generators,
                                     unsigned long N, unsigned long L, const uc_options* opts, char** out);
/* generators: "d:c" entries separated by ';'. */
UC_API uc_status uc_semigroup_json(const uc_field* field, const char* generators, const uc_options* opts,
                                   char** out);

UC_API uc_status uc_bounds_json(int t, unsigned long q, unsigned long d, char** out);

UC_API uc_status uc_height_json(const uc_field* field, const char* element, char** out);

#ifdef __cplusplus
}
#endif

#endif
