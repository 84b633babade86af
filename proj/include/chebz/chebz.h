#ifndef CHEBZ_CHEBZ_H
#define CHEBZ_CHEBZ_H

#include <stddef.h>
#include <stdint.h>

#if defined(CHEBZ_BUILDING_LIBRARY)
#define CHEBZ_API __attribute__((visibility("default")))
#else
#define CHEBZ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum chebz_status {
  CHEBZ_OK = 0,
  CHEBZ_E_INVALID = 1,         /* bad argument, malformed spec or file contents */
  CHEBZ_E_NOT_APPLICABLE = 2,  /* a hypothesis of the requested check does not hold */
  CHEBZ_E_DIAGNOSTIC = 3,      /* post-verification failed, e.g. the input is not Chebyshev */
  CHEBZ_E_IO = 4,
  CHEBZ_E_BUFFER = 5,          /* caller buffer too small; the needed size is still reported */
  CHEBZ_E_INTERNAL = 6
} chebz_status;

typedef enum chebz_check {
  CHEBZ_CHECK_PASS = 0,
  CHEBZ_CHECK_FAIL = 1,
  CHEBZ_CHECK_NOT_APPLICABLE = 2,
  CHEBZ_CHECK_DEGENERATE = 3
} chebz_check;

typedef struct chebz_system chebz_system;
typedef struct chebz_curve chebz_curve;
typedef struct chebz_polyline chebz_polyline;
typedef struct chebz_oval chebz_oval;
typedef struct chebz_report chebz_report;

CHEBZ_API const char* chebz_version(void);
CHEBZ_API const char* chebz_status_string(chebz_status status);
/* Message of the last failing call on this thread; empty after success. */
CHEBZ_API const char* chebz_last_error(void);

/* Systems: "poly:N", "trig:K" or "power:a1,a2,...". When lo < hi the
   interval (lo, hi) replaces the default one; ignored for trig. */
CHEBZ_API chebz_status chebz_system_parse(const char* spec, double lo, double hi,
                                          chebz_system** out);
CHEBZ_API void chebz_system_free(chebz_system* sys);
CHEBZ_API int chebz_system_order(const chebz_system* sys);
CHEBZ_API int chebz_system_periodic(const chebz_system* sys);
CHEBZ_API chebz_status chebz_system_verify(const chebz_system* sys, int trials, uint64_t seed,
                                           int* is_chebyshev);

/* Function orthogonal to the system changing sign exactly at the points.
   Heights go to heights[0..cap) with the count in *n_heights; the function is
   evaluated at ts[0..n_ts) into values. Any output pointer may be NULL. */
CHEBZ_API chebz_status chebz_synth_orthogonal(const chebz_system* sys, const double* points,
                                              size_t n_points, double* heights, size_t cap,
                                              size_t* n_heights, const double* ts, size_t n_ts,
                                              double* values, int* sign_changes,
                                              double* max_residual);

/* Combination of the basis with simple roots (sign changes) and double roots
   (touching zeros). coeffs must hold chebz_system_order(sys) entries. */
CHEBZ_API chebz_status chebz_annihilator(const chebz_system* sys, const double* simple,
                                         size_t n_simple, const double* dbl, size_t n_double,
                                         double* coeffs, size_t cap, int* sign_changes);

/* Curves: moment:d,a,b | trig:k | circle | power:a,b,alpha... | exp[:a,b] |
   sine:c,a,b | polygon:m,r */
CHEBZ_API chebz_status chebz_curve_parse(const char* spec, chebz_curve** out);
CHEBZ_API void chebz_curve_free(chebz_curve* curve);
CHEBZ_API int chebz_curve_dim(const chebz_curve* curve);
CHEBZ_API int chebz_curve_closed(const chebz_curve* curve);
CHEBZ_API chebz_status chebz_curve_eval(const chebz_curve* curve, double t, double* x, size_t cap);
/* Falsification search: *is_convex = 0 only with a hyperplane witness. */
CHEBZ_API chebz_status chebz_curve_convexity(const chebz_curve* curve, int trials, uint64_t seed,
                                             int* is_convex, int* max_count);
CHEBZ_API chebz_status chebz_curve_dimension(const chebz_curve* curve, int n, int homogeneous,
                                             int* dimension);

/* Polylines. vertices is row-major, count rows of dim coordinates. */
CHEBZ_API chebz_status chebz_polyline_create(const double* vertices, size_t count, int dim,
                                             int closed, chebz_polyline** out);
CHEBZ_API chebz_status chebz_polyline_read(const char* path, chebz_polyline** out);
CHEBZ_API chebz_status chebz_polyline_write(const chebz_polyline* p, const char* path);
CHEBZ_API chebz_status chebz_polyline_random_convex(int k, uint64_t seed, chebz_polyline** out);
CHEBZ_API void chebz_polyline_free(chebz_polyline* p);
CHEBZ_API int chebz_polyline_size(const chebz_polyline* p);
CHEBZ_API int chebz_polyline_dim(const chebz_polyline* p);
/* Random mass vector annihilating polynomials of degree <= n; cap >= size. */
CHEBZ_API chebz_status chebz_polyline_masses(const chebz_polyline* p, int n, uint64_t seed,
                                             double* masses, size_t cap);
CHEBZ_API chebz_status chebz_polyline_mass_check(const chebz_polyline* p, int n,
                                                 const double* masses, size_t count, double tol,
                                                 chebz_check* verdict, int* sign_changes,
                                                 int* bound);

/* Ovals by support function h0 + sum a_m cos(m t) + b_m sin(m t), m = 1..count. */
CHEBZ_API chebz_status chebz_oval_create(double h0, const double* a, const double* b, size_t count,
                                         chebz_oval** out);
CHEBZ_API chebz_status chebz_oval_read(const char* path, chebz_oval** out);
CHEBZ_API chebz_status chebz_oval_write(const chebz_oval* oval, const char* path);
CHEBZ_API chebz_status chebz_oval_random(int harmonics, double amplitude, uint64_t seed,
                                         chebz_oval** out);
CHEBZ_API void chebz_oval_free(chebz_oval* oval);
/* Extrema of the radius of curvature; ref may be NULL for the plain vertex
   count, otherwise the ratio of the two radii is used. */
CHEBZ_API chebz_status chebz_oval_vertices(const chebz_oval* oval, const chebz_oval* ref,
                                           chebz_check* verdict, int* extrema);

/* Runs a CLI command described by a JSON object: {"command": "verify theorem6",
   "seed": 7, "trials": 100, "options": {"n": "1"}, ...}. A finished run returns
   CHEBZ_OK even when bounds failed; *exit_code carries the outcome. */
CHEBZ_API chebz_status chebz_run(const char* config_json, chebz_report** out, int* exit_code);
CHEBZ_API const char* chebz_report_json(const chebz_report* report);
CHEBZ_API const char* chebz_report_csv(const chebz_report* report);
CHEBZ_API int chebz_report_exit_code(const chebz_report* report);
CHEBZ_API int chebz_report_fail_count(const chebz_report* report);
CHEBZ_API void chebz_report_free(chebz_report* report);

/* Comma-separated subcommands of "verify", "synth" or "curve". */
CHEBZ_API const char* chebz_subcommands(const char* verb);

#ifdef __cplusplus
}
#endif

#endif
