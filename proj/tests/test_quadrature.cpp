#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "limcyc/error.hpp"
#include "limcyc/geometry.hpp"
#include "limcyc/quadrature.hpp"

using namespace limcyc;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule, the independent 1D oracle.
double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("polynomial integrals over a triangle") {
  const Triangle t{{0, 0}, {1, 0}, {0, 1}};
  CHECK(t.area() == doctest::Approx(0.5));
  // Integral of x^a y^b over the unit simplex is a! b! / (a + b + 2)!.
  const auto r = integrate_triangle([](const Point& p) { return p[0] * p[0] * p[1]; }, t, 1e-12);
  CHECK(r.value == doctest::Approx(2.0 / 120.0).epsilon(1e-12));
  const auto s = integrate_triangle([](const Point& p) { return std::exp(p[0] + p[1]); }, t, 1e-12);
  // Integral of e^(x+y) over the simplex is 1.
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("triangulation of non-convex polygons") {
  const std::vector<Point> l{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const auto tris = triangulate(l);
  double area = 0;
  for (const auto& t : tris) area += t.area();
  CHECK(area == doctest::Approx(3.0));
  std::vector<Point> cw(l.rbegin(), l.rend());
  const auto r = integrate_polygon([](const Point& p) { return p[0]; }, cw, 1e-12);
  // First moments of the rectangles [0,2]x[0,1] and [0,1]x[1,2].
  CHECK(r.value == doctest::Approx(2.0 + 0.5).epsilon(1e-12));
  CHECK_THROWS_AS(triangulate(std::vector<Point>{{0, 0}, {1, 0}}), Error);
}

TEST_CASE("green flux over the unit disk") {
  const Poly circle = parse_poly("x^2+y^2-1");
  const auto ovals = trace_ovals(circle, {-2, 2, -2, 2});
  REQUIRE(ovals.size() == 1);
  const LinearPoly d = LinearPoly::from_poly(parse_poly("y-2"));
  // Oracle: the inner integral of 1/(y-2)^2 over |y| < s is
  // 1/(2-s) - 1/(2+s) with s = sqrt(1 - x^2); x = sin(u) makes the outer
  // integrand smooth for Simpson.
  const double oracle = simpson(
      [](double u) {
        const double s = std::cos(u);
        return (1 / (2 - s) - 1 / (2 + s)) * s;
      },
      -kPi / 2, kPi / 2, 4000);
  const double closed = 2 * kPi * (2 / std::sqrt(3.0) - 1);
  CHECK(oracle == doctest::Approx(closed).epsilon(1e-8));
  const double flux = green_flux(ovals[0], d, Rat(0), Rat(1), 1e-10, &circle);
  CHECK(std::abs(flux - closed) / closed < 1e-9);
  // Without the arc correction the polygon misses an O(h^2) sliver.
  const double poly_only = green_flux(ovals[0], d, Rat(0), Rat(1));
  CHECK(std::abs(poly_only - closed) / closed < 1e-3);
  CHECK(std::abs(poly_only - closed) > std::abs(flux - closed));
}

TEST_CASE("green flux preconditions") {
  const auto ovals = trace_ovals(parse_poly("x^2+y^2-1"), {-2, 2, -2, 2});
  REQUIRE(ovals.size() == 1);
  try {
    green_flux(ovals[0], LinearPoly::from_poly(parse_poly("y-2")), Rat(1), Rat(0));
    FAIL("expected degenerate-parameters");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateParameters);
  }
  try {
    green_flux(ovals[0], LinearPoly::from_poly(parse_poly("y")), Rat(0), Rat(1));
    FAIL("expected invalid-line");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidLine);
  }
}
