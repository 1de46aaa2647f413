#ifndef TORSTAB_TORSTAB_H
#define TORSTAB_TORSTAB_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TORSTAB_BUILDING_LIBRARY)
#    define TORSTAB_API __declspec(dllexport)
#  else
#    define TORSTAB_API __declspec(dllimport)
#  endif
#else
#  define TORSTAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; values match the library's error taxonomy. */
typedef enum tst_status {
  TST_OK = 0,
  TST_ZERO_CHARGE = 1,
  TST_DOMAIN_ERROR = 2,
  TST_UNSUPPORTED_SPECTRUM = 3,
  TST_NOT_IN_HEART = 4,
  TST_INVALID_TORSION_PAIR = 5,
  TST_INCONSISTENT_MORPHISM = 6,
  TST_MISSING_HN_DATA = 7,
  TST_NOT_NUMERICALLY_CONSISTENT = 8,
  TST_NOT_IN_U = 9,
  TST_ON_SPECTRUM = 10,
  TST_NEVER_ESCAPES = 11,
  TST_DISCONNECTED = 12,
  TST_INVALID_EXTENSION = 13,
  TST_PARSE_ERROR = 14,
  TST_UNDETERMINED_HN = 15,
  TST_INVALID_ARGUMENT = 98,
  TST_INTERNAL = 99
} tst_status;

typedef struct tst_lifted tst_lifted;     /* element of the universal cover of GL+(2,R) */
typedef struct tst_point tst_point;       /* point of U(X) in orbit-normal form */

TORSTAB_API const char* tst_version(void);
TORSTAB_API const char* tst_status_name(tst_status status);
/* Message of the last failed call on this thread ("" if none). */
TORSTAB_API const char* tst_last_error(void);

/* JSON request in, JSON result out. On success *response holds the result
   object; on failure it holds {"error": {...}}. Free with tst_string_free. */
TORSTAB_API tst_status tst_run_json(const char* request, char** response);
TORSTAB_API void tst_string_free(char* s);

/* Matrix entries are decimal or "n/d" strings, row-major. */
TORSTAB_API tst_status tst_lifted_create(const char* const entries[4], long long winding,
                                         tst_lifted** out);
TORSTAB_API tst_status tst_lifted_compose(const tst_lifted* a, const tst_lifted* b,
                                          tst_lifted** out);
TORSTAB_API tst_status tst_lifted_inverse(const tst_lifted* a, tst_lifted** out);
TORSTAB_API tst_status tst_lifted_eval(const tst_lifted* a, double phi, double* out);
TORSTAB_API tst_status tst_lifted_matrix(const tst_lifted* a, double out[4]);
TORSTAB_API long long tst_lifted_winding(const tst_lifted* a);
TORSTAB_API void tst_lifted_free(tst_lifted* a);

TORSTAB_API tst_status tst_point_std(int p, int d, tst_point** out);
/* gamma as decimal or "n/d" */
TORSTAB_API tst_status tst_point_deg(int p, const char* gamma, int d, tst_point** out);
TORSTAB_API tst_status tst_point_act(const tst_lifted* g, const tst_point* sigma, tst_point** out);
/* charge "a,b,c,e", phases as decimal or "n/d" */
TORSTAB_API tst_status tst_classify(const char* charge, const char* phi, const char* psi, int d,
                                    tst_point** out);
/* 0 for Std, 1 for Deg */
TORSTAB_API int tst_point_kind(const tst_point* sigma);
TORSTAB_API int tst_point_index(const tst_point* sigma);
TORSTAB_API tst_status tst_point_lifted(const tst_point* sigma, tst_lifted** out);
TORSTAB_API tst_status tst_point_json(const tst_point* sigma, char** out);
TORSTAB_API void tst_point_free(tst_point* sigma);

#ifdef __cplusplus
}
#endif

#endif
