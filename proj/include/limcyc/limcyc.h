#ifndef LIMCYC_LIMCYC_H
#define LIMCYC_LIMCYC_H

/* C interface to the limcyc library.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every operation returns an lcy_status; on failure the message is available
 * from lcy_last_error() until the next call on the same thread. Results are
 * JSON documents (or CSV/SVG text) returned through a char** that the caller
 * releases with lcy_string_free. Rationals cross the boundary as "num/den"
 * text; polynomials are read from text or from a JSON list of
 * [i, j, "num/den"] records. */

#include <stddef.h>

#if defined(_WIN32)
#if defined(LIMCYC_BUILDING_LIBRARY)
#define LCY_API __declspec(dllexport)
#else
#define LCY_API __declspec(dllimport)
#endif
#else
#define LCY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lcy_status {
  LCY_OK = 0,
  LCY_ERR_PARSE = 1,
  LCY_ERR_INVALID_ARGUMENT,
  LCY_ERR_UNSUPPORTED_DEGREE,
  LCY_ERR_OUT_OF_TABLE,
  LCY_ERR_DIVISION_BY_ZERO,
  LCY_ERR_DEGENERATE_CURVE,
  LCY_ERR_DIVIDING_LINE,
  LCY_ERR_DEGENERATE_PARAMETERS,
  LCY_ERR_LINE_MEETS_OVAL,
  LCY_ERR_INVALID_LINE,
  LCY_ERR_AMBIGUOUS_POINT,
  LCY_ERR_NOT_INVARIANT,
  LCY_ERR_RELOCATION_NEEDED,
  LCY_ERR_RESOLUTION,
  LCY_ERR_INTEGRATION,
  LCY_ERR_NO_CYCLE,
  LCY_ERR_NON_CONVERGENCE,
  LCY_ERR_SEARCH_FAILURE,
  LCY_ERR_IO,
  LCY_ERR_INTERNAL
} lcy_status;

typedef struct lcy_poly lcy_poly;
typedef struct lcy_field lcy_field;

typedef struct lcy_region {
  double xmin, xmax, ymin, ymax;
} lcy_region;

typedef enum lcy_bounds_family { LCY_HILBERT = 0, LCY_KOLMOGOROV = 1, LCY_SQUARE = 2 } lcy_bounds_family;

typedef enum lcy_text_format { LCY_FORMAT_JSON = 0, LCY_FORMAT_CSV = 1, LCY_FORMAT_SVG = 2 } lcy_text_format;

/* Relocated catalog base field and the Christopher field it is composed
 * with. NULL line / alpha / beta select the defaults. */
typedef struct lcy_build_params {
  const char* const* square_radii;
  size_t radii_count;
  const char* center_x;
  const char* center_y;
  const char* scale;
  const lcy_poly* line;
  const char* alpha;
  const char* beta;
  int grid;
} lcy_build_params;

/* Kebab-case name of a status ("ok", "degenerate-curve", ...). */
LCY_API const char* lcy_status_name(lcy_status status);
LCY_API const char* lcy_last_error(void);
LCY_API const char* lcy_version(void);
LCY_API void lcy_string_free(char* s);

LCY_API lcy_status lcy_poly_parse(const char* text, lcy_poly** out);
LCY_API void lcy_poly_free(lcy_poly* p);
LCY_API lcy_status lcy_poly_format(const lcy_poly* p, char** out);
LCY_API int lcy_poly_degree(const lcy_poly* p);

LCY_API lcy_status lcy_field_new(const lcy_poly* p, const lcy_poly* q, lcy_field** out);
LCY_API void lcy_field_free(lcy_field* f);

/* {"cofactor": K} when the curve is invariant, otherwise
 * {"invariant": false, "remainder": R}; *invariant receives 1 or 0. */
LCY_API lcy_status lcy_cofactor(const lcy_poly* curve, const lcy_field* field, int* invariant, char** json);

LCY_API lcy_status lcy_christopher(const lcy_poly* curve, const lcy_poly* line, const char* alpha, const char* beta,
                                   const lcy_region* region, int grid, char** json);

LCY_API lcy_status lcy_ovals(const lcy_poly* curve, const lcy_region* region, int grid, char** json);
LCY_API lcy_status lcy_singular(const lcy_poly* curve, const lcy_region* region, int grid, char** json);

/* Cycles found from seed_count seeds in the region. */
LCY_API lcy_status lcy_cycles(const lcy_field* field, const lcy_region* region, int seed_count, char** json);

/* One cycle refined from a seed point. */
LCY_API lcy_status lcy_refine(const lcy_field* field, double x, double y, char** json);

/* epsilon is "auto" (halving search) or a positive rational. */
LCY_API lcy_status lcy_compose(const lcy_poly* curve, const lcy_build_params* params, const char* epsilon,
                               const lcy_region* region, char** json);

LCY_API lcy_status lcy_kolmogorov(const lcy_build_params* params, char** json);
LCY_API lcy_status lcy_game(const lcy_build_params* params, char** json);

LCY_API lcy_status lcy_harnack(int degree, int grid, char** json);
LCY_API lcy_status lcy_har(long m, long* out);
LCY_API lcy_status lcy_bounds(lcy_bounds_family family, int n, char** json);
LCY_API lcy_status lcy_recurrent(int n, int m, char** json);
LCY_API lcy_status lcy_hcbound(int n, const lcy_poly* curve, const lcy_region* region, int grid, char** json);

/* Green flux over each oval, next to the divergence exponent of the
 * Christopher field along it. */
LCY_API lcy_status lcy_flux(const lcy_poly* curve, const lcy_poly* line, const char* alpha, const char* beta,
                            const lcy_region* region, int grid, char** json);

/* overlay may be NULL; format is LCY_FORMAT_CSV or LCY_FORMAT_SVG. */
LCY_API lcy_status lcy_portrait(const lcy_field* field, const lcy_region* region, int lattice, const lcy_poly* overlay,
                                lcy_text_format format, char** out);

#ifdef __cplusplus
}
#endif

#endif
