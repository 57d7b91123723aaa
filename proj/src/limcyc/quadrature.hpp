#pragma once

#include <functional>
#include <span>
#include <vector>

#include "limcyc/geometry.hpp"
#include "limcyc/numeric.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

struct Triangle {
  Point a, b, c;
  double area() const;
};

/// Ear-clipping triangulation of a simple polygon (either orientation).
/// Throws Resolution if no ear can be found (non-simple input).
std::vector<Triangle> triangulate(std::span<const Point> polygon);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int triangles = 0;
};

using ScalarField = std::function<double(const Point&)>;

/// Adaptive integration over one triangle: the 7-point degree-5 rule is
/// compared against its value on the four midpoint subtriangles, with a
/// Richardson correction on acceptance.
QuadratureResult integrate_triangle(const ScalarField& f, const Triangle& t, double tol);

/// Integral of f over the interior of a simple polygon.
QuadratureResult integrate_polygon(const ScalarField& f, std::span<const Point> polygon, double tol);

/// Integral over the oval's interior of (alpha*D_x + beta*D_y) / D^2.
///
/// When `curve` is given the strip between each polygon edge and the true
/// arc of curve = 0 is added, which removes the O(h^2) chord error of the
/// polygonal interior.
/// Throws DegenerateParameters when alpha*D_x + beta*D_y = 0 and InvalidLine
/// when D vanishes on the closed interior.
double green_flux(const Oval& interior_of, const LinearPoly& d, const Rat& alpha, const Rat& beta,
                  double quad_tol = 1e-9, const Poly* curve = nullptr);

}  // namespace limcyc
