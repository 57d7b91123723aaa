#include "limcyc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "limcyc/error.hpp"

namespace limcyc {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

Point mid(const Point& a, const Point& b) { return {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])}; }

// Closed containment in a counterclockwise triangle, ignoring its corners.
// A reflex vertex touching the diagonal also blocks the ear.
bool blocks_ear(const Point& p, const Point& a, const Point& b, const Point& c, double flat) {
  if (p == a || p == b || p == c) return false;
  return cross(a, b, p) >= -flat && cross(b, c, p) >= -flat && cross(c, a, p) >= -flat;
}

// Radon's 7-point rule, exact for polynomials of degree 5.
double radon7(const ScalarField& f, const Triangle& t) {
  static const double s15 = std::sqrt(15.0);
  static const double a1 = (6.0 - s15) / 21.0, b1 = (9.0 + 2.0 * s15) / 21.0;
  static const double a2 = (6.0 + s15) / 21.0, b2 = (9.0 - 2.0 * s15) / 21.0;
  static const double w0 = 9.0 / 40.0;
  static const double w1 = (155.0 - s15) / 1200.0;
  static const double w2 = (155.0 + s15) / 1200.0;
  auto at = [&](double l0, double l1, double l2) {
    return f({l0 * t.a[0] + l1 * t.b[0] + l2 * t.c[0], l0 * t.a[1] + l1 * t.b[1] + l2 * t.c[1]});
  };
  const double third = 1.0 / 3.0;
  double s = w0 * at(third, third, third);
  s += w1 * (at(a1, a1, b1) + at(a1, b1, a1) + at(b1, a1, a1));
  s += w2 * (at(a2, a2, b2) + at(a2, b2, a2) + at(b2, a2, a2));
  return s * t.area();
}

std::array<Triangle, 4> split(const Triangle& t) {
  const Point ab = mid(t.a, t.b), bc = mid(t.b, t.c), ca = mid(t.c, t.a);
  return {Triangle{t.a, ab, ca}, Triangle{ab, t.b, bc}, Triangle{ca, bc, t.c}, Triangle{ab, bc, ca}};
}

}  // namespace

double Triangle::area() const { return 0.5 * std::abs(cross(a, b, c)); }

std::vector<Triangle> triangulate(std::span<const Point> polygon) {
  const std::size_t n0 = polygon.size();
  if (n0 < 3) throw Error(ErrorCode::InvalidArgument, "polygon needs at least 3 vertices");
  std::vector<Point> pts(polygon.begin(), polygon.end());
  if (signed_area(pts) < 0) std::reverse(pts.begin(), pts.end());

  double scale = 0.0;
  for (const auto& p : pts) scale = std::max({scale, std::abs(p[0]), std::abs(p[1])});
  double longest = 0.0;
  for (std::size_t i = 0; i < n0; ++i) longest = std::max(longest, distance(pts[i], pts[(i + 1) % n0]));
  const double flat = 1e-14 * longest * std::max(longest, scale);

  std::vector<std::size_t> next(n0), prev(n0);
  for (std::size_t i = 0; i < n0; ++i) {
    next[i] = (i + 1) % n0;
    prev[i] = (i + n0 - 1) % n0;
  }
  std::vector<Triangle> out;
  out.reserve(n0);
  std::size_t remaining = n0;
  std::size_t i = 0;
  std::size_t misses = 0;
  auto remove = [&](std::size_t v) {
    next[prev[v]] = next[v];
    prev[next[v]] = prev[v];
    --remaining;
    misses = 0;
  };
  while (remaining > 3) {
    const std::size_t a = prev[i], c = next[i];
    const double cr = cross(pts[a], pts[i], pts[c]);
    if (std::abs(cr) <= flat) {
      // Collinear spike or straight vertex: drop it without emitting area.
      remove(i);
      i = c;
      continue;
    }
    bool ear = cr > 0;
    if (ear) {
      const double xmin = std::min({pts[a][0], pts[i][0], pts[c][0]});
      const double xmax = std::max({pts[a][0], pts[i][0], pts[c][0]});
      const double ymin = std::min({pts[a][1], pts[i][1], pts[c][1]});
      const double ymax = std::max({pts[a][1], pts[i][1], pts[c][1]});
      for (std::size_t k = next[c]; k != a; k = next[k]) {
        const Point& p = pts[k];
        if (p[0] < xmin || p[0] > xmax || p[1] < ymin || p[1] > ymax) continue;
        if (blocks_ear(p, pts[a], pts[i], pts[c], flat)) {
          ear = false;
          break;
        }
      }
    }
    if (ear) {
      out.push_back({pts[a], pts[i], pts[c]});
      remove(i);
      i = c;
      continue;
    }
    i = c;
    if (++misses > remaining) throw Error(ErrorCode::Resolution, "triangulation failed: polygon is not simple");
  }
  const std::size_t a = prev[i], c = next[i];
  if (cross(pts[a], pts[i], pts[c]) > 0) out.push_back({pts[a], pts[i], pts[c]});
  return out;
}

QuadratureResult integrate_triangle(const ScalarField& f, const Triangle& t, double tol) {
  QuadratureResult res;
  struct Item {
    Triangle tri;
    double coarse;
    double tol;
    int depth;
  };
  std::vector<Item> stack{{t, radon7(f, t), tol, 0}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    const auto kids = split(it.tri);
    std::array<double, 4> fine{};
    double sum = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      fine[k] = radon7(f, kids[k]);
      sum += fine[k];
    }
    const double diff = sum - it.coarse;
    if (std::abs(diff) <= it.tol || it.depth >= 24) {
      res.value += sum + diff / 63.0;
      res.error += std::abs(diff) / 63.0;
      res.triangles += 4;
      continue;
    }
    for (std::size_t k = 0; k < 4; ++k) stack.push_back({kids[k], fine[k], 0.25 * it.tol, it.depth + 1});
  }
  return res;
}

QuadratureResult integrate_polygon(const ScalarField& f, std::span<const Point> polygon, double tol) {
  if (!(tol > 0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
  const auto tris = triangulate(polygon);
  double total_area = 0.0;
  for (const auto& t : tris) total_area += t.area();
  QuadratureResult res;
  if (total_area <= 0) return res;
  for (const auto& t : tris) {
    const auto r = integrate_triangle(f, t, tol * t.area() / total_area);
    res.value += r.value;
    res.error += r.error;
    res.triangles += r.triangles;
  }
  return res;
}

double green_flux(const Oval& interior_of, const LinearPoly& d, const Rat& alpha, const Rat& beta, double quad_tol,
                  const Poly* curve) {
  if (!(quad_tol > 0)) throw Error(ErrorCode::InvalidArgument, "quadrature tolerance must be positive");
  const Rat kq = alpha * d.a + beta * d.b;
  if (kq == 0) throw Error(ErrorCode::DegenerateParameters, "alpha*D_x + beta*D_y = 0");
  const auto& poly = interior_of.vertices;
  if (poly.size() < 3) throw Error(ErrorCode::InvalidArgument, "oval has fewer than 3 vertices");

  // D is affine, so its extremes over the (hull of the) interior are at
  // vertices; one strict sign there means D has no zero inside.
  int sign = 0;
  for (const auto& p : poly) {
    const double v = d(p[0], p[1]);
    const int s = v > kOnCurveTolerance ? 1 : (v < -kOnCurveTolerance ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) throw Error(ErrorCode::InvalidLine, "D vanishes on the oval interior");
    sign = s;
  }

  const double k = kq.get_d();
  const ScalarField f = [&](const Point& p) {
    const double v = d(p[0], p[1]);
    return k / (v * v);
  };
  double total = integrate_polygon(f, poly, quad_tol).value;
  if (curve == nullptr) return total;

  // Strip between each chord and the arc it subtends: Gauss-Legendre along
  // the chord, and over the normal offset h(t) to the curve.
  const CompiledCurve cc(*curve);
  const bool ccw = signed_area(poly) > 0;
  static const std::array<double, 5> gx{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                        0.9061798459386640};
  static const std::array<double, 5> gw{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                        0.2369268850561891, 0.2369268850561891};
  static const std::array<double, 3> hx{0.0, -0.7745966692414834, 0.7745966692414834};
  static const std::array<double, 3> hw{8.0 / 9.0, 5.0 / 9.0, 5.0 / 9.0};
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& p0 = poly[i];
    const Point& p1 = poly[(i + 1) % n];
    const double dx = p1[0] - p0[0], dy = p1[1] - p0[1];
    const double len = std::hypot(dx, dy);
    if (len == 0) continue;
    const Point out = ccw ? Point{dy / len, -dx / len} : Point{-dy / len, dx / len};
    double edge = 0.0;
    for (std::size_t g = 0; g < gx.size(); ++g) {
      const double t = 0.5 * (gx[g] + 1.0);
      const Point base{p0[0] + t * dx, p0[1] + t * dy};
      double h = 0.0;
      bool ok = false;
      for (int it = 0; it < 20; ++it) {
        const Point q{base[0] + h * out[0], base[1] + h * out[1]};
        const Point gr = cc.gradient(q);
        const double slope = gr[0] * out[0] + gr[1] * out[1];
        if (slope == 0) break;
        const double step = cc.c(q) / slope;
        h -= step;
        if (std::abs(step) <= 1e-15 * (1.0 + std::abs(h)) + 1e-300) {
          ok = true;
          break;
        }
      }
      if (!ok || std::abs(h) > len) continue;
      double inner = 0.0;
      for (std::size_t j = 0; j < hx.size(); ++j) {
        const double v = 0.5 * h * (hx[j] + 1.0);
        inner += hw[j] * f({base[0] + v * out[0], base[1] + v * out[1]});
      }
      edge += gw[g] * 0.5 * h * inner;
    }
    total += 0.5 * len * edge;
  }
  return total;
}

}  // namespace limcyc
