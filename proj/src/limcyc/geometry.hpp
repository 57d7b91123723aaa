#pragma once

#include <span>
#include <vector>

#include "limcyc/numeric.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

inline constexpr double kSingularTolerance = 1e-9;
inline constexpr double kOnCurveTolerance = 1e-10;
inline constexpr int kDefaultGrid = 256;

/// Axis-aligned box; xmin < xmax and ymin < ymax.
struct Region {
  double xmin = -10.0;
  double xmax = 10.0;
  double ymin = -10.0;
  double ymax = 10.0;

  /// Throws InvalidArgument for an empty or inverted box.
  void validate() const;
  bool contains(const Point& p) const {
    return p[0] > xmin && p[0] < xmax && p[1] > ymin && p[1] < ymax;
  }
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
};

struct SingularPoint {
  Point location{};
  double residual_c = 0.0;
  double residual_cx = 0.0;
  double residual_cy = 0.0;
};

enum class Orientation { Ccw, Cw };

/// Closed polyline approximating a bounded, singularity-free component of
/// C = 0 (the last vertex connects back to the first). Traced ovals are
/// oriented with C < 0 on the left.
struct Oval {
  std::vector<Point> vertices;
  double max_residual = 0.0;
  Orientation orientation = Orientation::Ccw;
  Region bbox;

  double diameter() const;
};

/// Critical points of C lying on C = 0, seeded from grid cells where the
/// gradient changes sign and refined by damped Gauss-Newton on (C, Cx, Cy).
/// Completeness holds only up to the grid resolution.
/// Throws DegenerateCurve when gcd(C, Cx, Cy) is nonconstant.
std::vector<SingularPoint> find_singular_points(const Poly& c, const Region& region, int grid_n = kDefaultGrid);

/// Marching-squares extraction of the ovals of C = 0 inside `region`.
///
/// Crossings are projected onto the curve (Newton along the gradient with a
/// bisection fallback on the grid edge). Components reaching the region
/// boundary are treated as unbounded and dropped, as are components passing
/// within 10 cells of a singular point. Result is sorted by bounding box.
/// Throws DegenerateCurve, or Resolution when a closed component is too
/// coarse (fewer than 16 vertices, or self-intersecting after projection).
std::vector<Oval> trace_ovals(const Poly& c, const Region& region, int grid_n = kDefaultGrid,
                              bool check_degeneracy = true);

/// Every component of C = 0 met by the grid, open or closed, projected onto
/// the curve. Used for drawing; no oval filtering.
std::vector<std::vector<Point>> contour_polylines(const Poly& c, const Region& region, int grid_n = kDefaultGrid);

/// True iff D keeps one strict sign, with |D| above the on-curve tolerance,
/// on every oval.
bool line_disjoint_from_ovals(const LinearPoly& d, std::span<const Oval> ovals);

/// Ray-casting parity test. Throws AmbiguousPoint when `pt` lies within the
/// polyline's resolution band (on-curve tolerance, widened to the squared
/// longest edge to cover the chord-to-arc gap).
bool point_in_oval(const Point& pt, const Oval& oval);

/// Shoelace area; positive for counterclockwise polygons.
double signed_area(std::span<const Point> polygon);

/// Symmetric Hausdorff distance between two closed polylines.
double hausdorff_distance(std::span<const Point> a, std::span<const Point> b);

/// Distance from p to the closed polyline `poly`.
double distance_to_polyline(const Point& p, std::span<const Point> poly);

}  // namespace limcyc
