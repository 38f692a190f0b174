#ifndef CHEEGER_H
#define CHEEGER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every call.
typedef enum CheegerStatus {
  CHEEGER_STATUS_OK = 0,
  CHEEGER_STATUS_NULL_POINTER = 1,
  CHEEGER_STATUS_INVALID_EXPONENT = 2,
  CHEEGER_STATUS_INVALID_SHAPE = 3,
  CHEEGER_STATUS_NOT_CONVEX = 4,
  CHEEGER_STATUS_DEGENERATE = 5,
  CHEEGER_STATUS_INVALID_ARGUMENT = 6,
  CHEEGER_STATUS_NUMERICAL = 7,
  CHEEGER_STATUS_INVALID_UTF8 = 8,
  CHEEGER_STATUS_JSON = 9,
  CHEEGER_STATUS_PANIC = 10,
} CheegerStatus;

// A validated convex polygon.
typedef struct CheegerPolygon CheegerPolygon;

// Solver settings; see [`cheeger_solver_options_default`].
typedef struct CheegerSolverOptions {
  size_t vertex_count;
  size_t multistarts;
  size_t max_iters;
  double tol_rel;
  uint64_t seed;
} CheegerSolverOptions;

// Comparison constants for the plane; `lower` is meaningful only when
// `has_lower` is set (exponents above 1).
typedef struct CheegerConstants {
  bool has_lower;
  double lower;
  double upper;
} CheegerConstants;

// Upper estimate of `h_q` and the set realizing it.
typedef struct CheegerEstimate {
  double value;
  double perimeter;
  double area;
  double lower_bound;
  size_t iterations;
  bool converged;
} CheegerEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or null. The pointer
// stays valid until the next failing call on the same thread.
const char *cheeger_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *cheeger_version(void);

struct CheegerSolverOptions cheeger_solver_options_default(void);

// Builds a convex polygon from `n` vertices given as interleaved
// `x0, y0, x1, y1, ...`. Either orientation is accepted.
enum CheegerStatus cheeger_polygon_new(const double *xy, size_t n, struct CheegerPolygon **out);

// Releases a polygon; null is ignored.
void cheeger_polygon_free(struct CheegerPolygon *p);

// Number of vertices kept after validation.
enum CheegerStatus cheeger_polygon_vertex_count(const struct CheegerPolygon *p, size_t *out);

enum CheegerStatus cheeger_polygon_area(const struct CheegerPolygon *p, double *out);

enum CheegerStatus cheeger_polygon_perimeter(const struct CheegerPolygon *p, double *out);

enum CheegerStatus cheeger_polygon_inradius(const struct CheegerPolygon *p, double *out);

// `h_q` of a planar disk of the given radius.
enum CheegerStatus cheeger_hq_ball(double q, double radius, double *out);

enum CheegerStatus cheeger_comparison_constants(double q, struct CheegerConstants *out);

// Estimates `h_q` of a convex polygon. `opts` may be null for defaults.
enum CheegerStatus cheeger_solve_polygon(const struct CheegerPolygon *p,
                                         double q,
                                         const struct CheegerSolverOptions *opts,
                                         struct CheegerEstimate *out);

// Estimates `h_q` of a shape given in the JSON shape-file format and
// returns the full estimate as a JSON string, to be released with
// [`cheeger_string_free`].
enum CheegerStatus cheeger_estimate_json(const char *shape_json,
                                         double q,
                                         const struct CheegerSolverOptions *opts,
                                         char **out);

// Releases a string returned by the library; null is ignored.
void cheeger_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHEEGER_H */
