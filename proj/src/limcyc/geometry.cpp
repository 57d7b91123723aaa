#include "limcyc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "limcyc/error.hpp"
#include "limcyc/gcd.hpp"

namespace limcyc {

namespace {

constexpr int kNewtonIterations = 20;
constexpr int kBisectionIterations = 200;
constexpr int kMinOvalVertices = 16;
constexpr double kSingularExclusionCells = 10.0;
constexpr double kSingularDedup = 1e-6;

double cross(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }
Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }

struct Grid {
  Region region;
  int n = 0;
  double hx = 0.0;
  double hy = 0.0;

  Grid(const Region& r, int grid_n) : region(r), n(grid_n), hx(r.width() / grid_n), hy(r.height() / grid_n) {}

  Point vertex(int i, int j) const {
    return {i == n ? region.xmax : region.xmin + i * hx, j == n ? region.ymax : region.ymin + j * hy};
  }
  double cell() const { return std::max(hx, hy); }
  std::size_t vindex(int i, int j) const { return static_cast<std::size_t>(j) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(i); }
  int horizontal_edge(int i, int j) const { return j * n + i; }
  int vertical_edge(int i, int j) const { return n * (n + 1) + j * (n + 1) + i; }
  int edge_count() const { return 2 * n * (n + 1); }

  // Endpoint vertex indices of an edge id.
  std::pair<std::array<int, 2>, std::array<int, 2>> endpoints(int e) const {
    const int nh = n * (n + 1);
    if (e < nh) {
      const int j = e / n;
      const int i = e % n;
      return {{i, j}, {i + 1, j}};
    }
    e -= nh;
    const int j = e / (n + 1);
    const int i = e % (n + 1);
    return {{i, j}, {i, j + 1}};
  }
};

void check_grid(const Region& region, int grid_n) {
  region.validate();
  if (grid_n < 32) throw Error(ErrorCode::InvalidArgument, "grid size must be at least 32");
  if (grid_n > 8192) throw Error(ErrorCode::InvalidArgument, "grid size must be at most 8192");
}

void check_curve(const Poly& c) {
  if (c.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
  if (!common_factor_free(c)) {
    throw Error(ErrorCode::DegenerateCurve,
                "curve '" + format_poly(c) + "' shares a factor with its gradient (infinitely many singular points possible)");
  }
}

struct Projected {
  Point p{};
  double residual = 0.0;
};

// Moves a grid-edge crossing onto C = 0.
Projected project_crossing(const CompiledCurve& cc, Point a, Point b, double va, double vb, double cell) {
  const double t = va == vb ? 0.5 : va / (va - vb);
  const Point start{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
  Point p = start;
  for (int k = 0; k < kNewtonIterations; ++k) {
    const double f = cc.c(p);
    if (std::abs(f) <= kOnCurveTolerance) return {p, std::abs(f)};
    const Point g = cc.gradient(p);
    const double gg = g[0] * g[0] + g[1] * g[1];
    if (!(gg > 0.0)) break;
    p = {p[0] - f * g[0] / gg, p[1] - f * g[1] / gg};
    if (!(distance(p, start) <= cell)) break;
  }
  if (distance(p, start) <= cell && std::abs(cc.c(p)) <= kOnCurveTolerance) return {p, std::abs(cc.c(p))};

  // Bisection on the edge; the endpoint signs differ (zero counts as positive).
  Point lo = a;
  Point hi = b;
  const bool lo_negative = va < 0.0;
  Projected best{start, std::abs(cc.c(start))};
  for (int k = 0; k < kBisectionIterations; ++k) {
    const Point mid{0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])};
    const double fm = cc.c(mid);
    if (std::abs(fm) < best.residual) best = {mid, std::abs(fm)};
    if (std::abs(fm) <= kOnCurveTolerance) break;
    if ((fm < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (mid == lo && mid == hi) break;
  }
  return best;
}

struct Component {
  std::vector<int> nodes;
  bool closed = false;
};

struct Extraction {
  Grid grid;
  std::vector<double> values;
  std::vector<Component> components;
};

Extraction extract_components(const CompiledCurve& cc, const Region& region, int grid_n) {
  Extraction ex{Grid(region, grid_n), {}, {}};
  const Grid& g = ex.grid;
  const int n = grid_n;
  ex.values.resize(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) ex.values[g.vindex(i, j)] = cc.c(g.vertex(i, j));

  std::vector<int> next(static_cast<std::size_t>(g.edge_count()), -1);
  std::vector<int> prev(static_cast<std::size_t>(g.edge_count()), -1);

  static constexpr std::array<Point, 4> kCorner{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
  static constexpr std::array<Point, 4> kMid{{{0.5, 0}, {1, 0.5}, {0.5, 1}, {0, 0.5}}};

  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const std::array<bool, 4> neg{ex.values[g.vindex(i, j)] < 0.0, ex.values[g.vindex(i + 1, j)] < 0.0,
                                    ex.values[g.vindex(i + 1, j + 1)] < 0.0, ex.values[g.vindex(i, j + 1)] < 0.0};
      const std::array<int, 4> edge{g.horizontal_edge(i, j), g.vertical_edge(i + 1, j), g.horizontal_edge(i, j + 1),
                                    g.vertical_edge(i, j)};
      // Directs the segment between local edges ka, kb so that C < 0 is on its left.
      auto link = [&](int ka, int kb) {
        const Point d = sub(kMid[static_cast<std::size_t>(kb)], kMid[static_cast<std::size_t>(ka)]);
        std::vector<int> left;
        std::vector<int> right;
        for (int k = 0; k < 4; ++k) {
          const double s = cross(d, sub(kCorner[static_cast<std::size_t>(k)], kMid[static_cast<std::size_t>(ka)]));
          (s > 0 ? left : right).push_back(k);
        }
        const bool use_left = left.size() <= right.size();
        const bool group_negative = neg[static_cast<std::size_t>((use_left ? left : right).front())];
        const bool negative_on_left = use_left ? group_negative : !group_negative;
        int from = edge[static_cast<std::size_t>(ka)];
        int to = edge[static_cast<std::size_t>(kb)];
        if (!negative_on_left) std::swap(from, to);
        next[static_cast<std::size_t>(from)] = to;
        prev[static_cast<std::size_t>(to)] = from;
      };
      std::array<int, 4> crossed{};
      int count = 0;
      for (int k = 0; k < 4; ++k)
        if (neg[static_cast<std::size_t>(k)] != neg[static_cast<std::size_t>((k + 1) % 4)]) crossed[static_cast<std::size_t>(count++)] = k;
      if (count == 2) {
        link(crossed[0], crossed[1]);
      } else if (count == 4) {
        const Point lo = g.vertex(i, j);
        const bool center_negative = cc.c(lo[0] + 0.5 * g.hx, lo[1] + 0.5 * g.hy) < 0.0;
        if (center_negative == neg[0]) {
          link(0, 1);
          link(2, 3);
        } else {
          link(3, 0);
          link(1, 2);
        }
      }
    }
  }

  std::vector<char> visited(static_cast<std::size_t>(g.edge_count()), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (prev[static_cast<std::size_t>(e)] != -1 || next[static_cast<std::size_t>(e)] == -1) continue;
    Component comp;
    for (int v = e; v != -1; v = next[static_cast<std::size_t>(v)]) {
      visited[static_cast<std::size_t>(v)] = 1;
      comp.nodes.push_back(v);
    }
    ex.components.push_back(std::move(comp));
  }
  for (int e = 0; e < g.edge_count(); ++e) {
    if (visited[static_cast<std::size_t>(e)] || next[static_cast<std::size_t>(e)] == -1) continue;
    Component comp;
    comp.closed = true;
    int v = e;
    do {
      visited[static_cast<std::size_t>(v)] = 1;
      comp.nodes.push_back(v);
      v = next[static_cast<std::size_t>(v)];
    } while (v != e && v != -1);
    if (v == -1) comp.closed = false;
    ex.components.push_back(std::move(comp));
  }
  return ex;
}

std::vector<Point> project_component(const CompiledCurve& cc, const Extraction& ex, const Component& comp,
                                     double& max_residual) {
  const Grid& g = ex.grid;
  std::vector<Point> pts;
  pts.reserve(comp.nodes.size());
  max_residual = 0.0;
  for (int e : comp.nodes) {
    const auto [a, b] = g.endpoints(e);
    const Projected pr = project_crossing(cc, g.vertex(a[0], a[1]), g.vertex(b[0], b[1]),
                                          ex.values[g.vindex(a[0], a[1])], ex.values[g.vindex(b[0], b[1])], g.cell());
    max_residual = std::max(max_residual, pr.residual);
    const double eps = 1e-14 * (1.0 + norm(pr.p));
    if (!pts.empty() && distance(pts.back(), pr.p) <= eps) continue;
    pts.push_back(pr.p);
  }
  if (comp.closed && pts.size() > 1 && distance(pts.front(), pts.back()) <= 1e-14 * (1.0 + norm(pts.front()))) {
    pts.pop_back();
  }
  return pts;
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1, const Point& q2) {
  auto orient = [](const Point& a, const Point& b, const Point& c) {
    const double v = cross(sub(b, a), sub(c, a));
    return (v > 0) - (v < 0);
  };
  auto on_segment = [](const Point& a, const Point& b, const Point& c) {
    return std::min(a[0], b[0]) <= c[0] && c[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= c[1] &&
           c[1] <= std::max(a[1], b[1]);
  };
  const int o1 = orient(p1, p2, q1);
  const int o2 = orient(p1, p2, q2);
  const int o3 = orient(q1, q2, p1);
  const int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

bool is_simple(const std::vector<Point>& pts) {
  const std::size_t n = pts.size();
  struct Box {
    double x0, x1, y0, y1;
  };
  std::vector<Box> boxes(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Point& a = pts[k];
    const Point& b = pts[(k + 1) % n];
    boxes[k] = {std::min(a[0], b[0]), std::max(a[0], b[0]), std::min(a[1], b[1]), std::max(a[1], b[1])};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      const Box& bi = boxes[i];
      const Box& bj = boxes[j];
      if (bi.x1 < bj.x0 || bj.x1 < bi.x0 || bi.y1 < bj.y0 || bj.y1 < bi.y0) continue;
      if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n])) return false;
    }
  }
  return true;
}

Region bounding_box(std::span<const Point> pts) {
  Region r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
           std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const Point& p : pts) {
    r.xmin = std::min(r.xmin, p[0]);
    r.xmax = std::max(r.xmax, p[0]);
    r.ymin = std::min(r.ymin, p[1]);
    r.ymax = std::max(r.ymax, p[1]);
  }
  return r;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = sub(b, a);
  const double len2 = ab[0] * ab[0] + ab[1] * ab[1];
  double t = len2 > 0 ? ((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {a[0] + t * ab[0], a[1] + t * ab[1]});
}

}  // namespace

void Region::validate() const {
  if (!(std::isfinite(xmin) && std::isfinite(xmax) && std::isfinite(ymin) && std::isfinite(ymax)) || !(xmin < xmax) ||
      !(ymin < ymax)) {
    throw Error(ErrorCode::InvalidArgument, "region must satisfy xmin < xmax and ymin < ymax");
  }
}

double Oval::diameter() const { return std::max(bbox.width(), bbox.height()); }

std::vector<SingularPoint> find_singular_points(const Poly& c, const Region& region, int grid_n) {
  check_grid(region, grid_n);
  check_curve(c);

  const Poly cx = differentiate(c, Var::X);
  const Poly cy = differentiate(c, Var::Y);
  const CompiledPoly fc(c);
  const CompiledPoly fx(cx);
  const CompiledPoly fy(cy);
  const CompiledPoly fxx(differentiate(cx, Var::X));
  const CompiledPoly fxy(differentiate(cx, Var::Y));
  const CompiledPoly fyy(differentiate(cy, Var::Y));

  const Grid g(region, grid_n);
  const int n = grid_n;
  std::vector<std::array<double, 3>> vals(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const Point p = g.vertex(i, j);
      vals[g.vindex(i, j)] = {fc(p), fx(p), fy(p)};
    }
  }

  auto residual = [&](const Point& p) {
    return std::array<double, 3>{fc(p), fx(p), fy(p)};
  };
  auto sumsq = [](const std::array<double, 3>& f) { return f[0] * f[0] + f[1] * f[1] + f[2] * f[2]; };

  std::vector<SingularPoint> found;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      bool candidate = true;
      for (std::size_t k = 0; k < 3 && candidate; ++k) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (auto [di, dj] : {std::pair{0, 0}, {1, 0}, {1, 1}, {0, 1}}) {
          const double v = vals[g.vindex(i + di, j + dj)][k];
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        // Widen by the spread so that tangential zeros (cusps, isolated
        // points) between grid vertices are not missed.
        const double spread = hi - lo;
        candidate = lo - spread <= 0.0 && hi + spread >= 0.0;
      }
      if (!candidate) continue;

      // Levenberg-Marquardt on F = (C, Cx, Cy).
      const Point base = g.vertex(i, j);
      Point p{base[0] + 0.5 * g.hx, base[1] + 0.5 * g.hy};
      auto f = residual(p);
      double lambda = 1e-3;
      for (int it = 0; it < 100; ++it) {
        const double j00 = fx(p), j01 = fy(p);
        const double j10 = fxx(p), j11 = fxy(p);
        const double j20 = j11, j21 = fyy(p);
        const double a00 = j00 * j00 + j10 * j10 + j20 * j20;
        const double a01 = j00 * j01 + j10 * j11 + j20 * j21;
        const double a11 = j01 * j01 + j11 * j11 + j21 * j21;
        const double g0 = j00 * f[0] + j10 * f[1] + j20 * f[2];
        const double g1 = j01 * f[0] + j11 * f[1] + j21 * f[2];
        bool improved = false;
        for (int tries = 0; tries < 12 && !improved; ++tries) {
          const double m00 = a00 * (1.0 + lambda) + 1e-300;
          const double m11 = a11 * (1.0 + lambda) + 1e-300;
          const double det = m00 * m11 - a01 * a01;
          if (!(std::abs(det) > 0.0)) {
            lambda *= 10.0;
            continue;
          }
          const Point trial{p[0] - (m11 * g0 - a01 * g1) / det, p[1] - (m00 * g1 - a01 * g0) / det};
          const auto ft = residual(trial);
          if (sumsq(ft) < sumsq(f)) {
            p = trial;
            f = ft;
            lambda = std::max(lambda / 3.0, 1e-12);
            improved = true;
          } else {
            lambda *= 4.0;
          }
        }
        if (!improved) break;
        if (std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])}) <= 1e-15) break;
      }
      if (std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])}) > kSingularTolerance) continue;
      if (p[0] < region.xmin || p[0] > region.xmax || p[1] < region.ymin || p[1] > region.ymax) continue;
      const bool duplicate = std::any_of(found.begin(), found.end(), [&](const SingularPoint& s) {
        return distance(s.location, p) <= kSingularDedup;
      });
      if (!duplicate) found.push_back({p, std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
    }
  }
  std::sort(found.begin(), found.end(), [](const SingularPoint& a, const SingularPoint& b) {
    return a.location < b.location;
  });
  return found;
}

std::vector<Oval> trace_ovals(const Poly& c, const Region& region, int grid_n, bool check_degeneracy) {
  check_grid(region, grid_n);
  if (check_degeneracy) {
    check_curve(c);
  } else if (c.is_constant()) {
    throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
  }

  const CompiledCurve cc(c);
  const Extraction ex = extract_components(cc, region, grid_n);
  const double exclusion = kSingularExclusionCells * ex.grid.cell();

  std::vector<SingularPoint> singular;
  bool singular_computed = false;

  std::vector<Oval> ovals;
  for (const Component& comp : ex.components) {
    if (!comp.closed) continue;
    Oval oval;
    oval.vertices = project_component(cc, ex, comp, oval.max_residual);

    if (!singular_computed) {
      singular = check_degeneracy ? find_singular_points(c, region, grid_n) : std::vector<SingularPoint>{};
      singular_computed = true;
    }
    const bool near_singular = std::any_of(oval.vertices.begin(), oval.vertices.end(), [&](const Point& v) {
      return std::any_of(singular.begin(), singular.end(),
                         [&](const SingularPoint& s) { return distance(v, s.location) <= exclusion; });
    });
    if (near_singular) continue;

    if (oval.vertices.size() < static_cast<std::size_t>(kMinOvalVertices) || !is_simple(oval.vertices)) {
      throw Error(ErrorCode::Resolution,
                  "a closed component near (" + std::to_string(oval.vertices.empty() ? 0.0 : oval.vertices[0][0]) +
                      ", " + std::to_string(oval.vertices.empty() ? 0.0 : oval.vertices[0][1]) +
                      ") is under-resolved; increase the grid size (currently " + std::to_string(grid_n) + ")");
    }
    oval.bbox = bounding_box(oval.vertices);
    oval.orientation = signed_area(oval.vertices) > 0 ? Orientation::Ccw : Orientation::Cw;
    ovals.push_back(std::move(oval));
  }
  std::sort(ovals.begin(), ovals.end(), [](const Oval& a, const Oval& b) {
    return std::tie(a.bbox.xmin, a.bbox.xmax, a.bbox.ymin, a.bbox.ymax) <
           std::tie(b.bbox.xmin, b.bbox.xmax, b.bbox.ymin, b.bbox.ymax);
  });
  return ovals;
}

std::vector<std::vector<Point>> contour_polylines(const Poly& c, const Region& region, int grid_n) {
  check_grid(region, grid_n);
  if (c.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
  const CompiledCurve cc(c);
  const Extraction ex = extract_components(cc, region, grid_n);
  std::vector<std::vector<Point>> out;
  for (const Component& comp : ex.components) {
    double residual = 0.0;
    std::vector<Point> pts = project_component(cc, ex, comp, residual);
    if (comp.closed && !pts.empty()) pts.push_back(pts.front());
    if (pts.size() >= 2) out.push_back(std::move(pts));
  }
  return out;
}

bool line_disjoint_from_ovals(const LinearPoly& d, std::span<const Oval> ovals) {
  for (const Oval& oval : ovals) {
    int sign = 0;
    for (const Point& v : oval.vertices) {
      const double value = d(v[0], v[1]);
      if (std::abs(value) <= kOnCurveTolerance) return false;
      const int s = value > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) return false;
    }
  }
  return true;
}

bool point_in_oval(const Point& pt, const Oval& oval) {
  const auto& v = oval.vertices;
  const std::size_t n = v.size();
  double longest = 0.0;
  for (std::size_t k = 0; k < n; ++k) longest = std::max(longest, distance(v[k], v[(k + 1) % n]));
  const double band = std::max(kOnCurveTolerance, longest * longest);
  if (distance_to_polyline(pt, v) <= band) {
    throw Error(ErrorCode::AmbiguousPoint, "point lies on the oval within its resolution band");
  }
  bool inside = false;
  for (std::size_t a = 0, b = n - 1; a < n; b = a++) {
    if ((v[a][1] > pt[1]) != (v[b][1] > pt[1])) {
      const double x = v[b][0] + (pt[1] - v[b][1]) * (v[a][0] - v[b][0]) / (v[a][1] - v[b][1]);
      if (pt[0] < x) inside = !inside;
    }
  }
  return inside;
}

double signed_area(std::span<const Point> polygon) {
  double acc = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < n; ++k) acc += cross(polygon[k], polygon[(k + 1) % n]);
  return 0.5 * acc;
}

double distance_to_polyline(const Point& p, std::span<const Point> poly) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  if (n == 1) return distance(p, poly[0]);
  for (std::size_t k = 0; k < n; ++k) best = std::min(best, point_segment_distance(p, poly[k], poly[(k + 1) % n]));
  return best;
}

double hausdorff_distance(std::span<const Point> a, std::span<const Point> b) {
  double h = 0.0;
  for (const Point& p : a) h = std::max(h, distance_to_polyline(p, b));
  for (const Point& p : b) h = std::max(h, distance_to_polyline(p, a));
  return h;
}

}  // namespace limcyc
