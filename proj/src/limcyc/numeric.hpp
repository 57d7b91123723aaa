#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "limcyc/poly.hpp"

namespace limcyc {

using Point = std::array<double, 2>;

inline double norm(const Point& p) { return std::hypot(p[0], p[1]); }
inline double distance(const Point& a, const Point& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

/// Double-precision snapshot of a Poly laid out for nested Horner evaluation.
class CompiledPoly {
 public:
  CompiledPoly() = default;
  explicit CompiledPoly(const Poly& p) {
    if (p.is_zero()) return;
    dx_ = p.degree_in(Var::X);
    dy_ = p.degree_in(Var::Y);
    coef_.assign(static_cast<std::size_t>((dx_ + 1) * (dy_ + 1)), 0.0);
    for (const auto& [m, c] : p.terms()) coef_[index(m.i, m.j)] = c.get_d();
  }

  double operator()(double x, double y) const {
    double acc = 0.0;
    for (int i = dx_; i >= 0; --i) {
      double row = 0.0;
      for (int j = dy_; j >= 0; --j) row = row * y + coef_[index(i, j)];
      acc = acc * x + row;
    }
    return acc;
  }
  double operator()(const Point& p) const { return (*this)(p[0], p[1]); }

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i * (dy_ + 1) + j); }

  int dx_ = -1;
  int dy_ = -1;
  std::vector<double> coef_;
};

/// A curve with its gradient, all precompiled.
struct CompiledCurve {
  CompiledPoly c;
  CompiledPoly cx;
  CompiledPoly cy;

  CompiledCurve() = default;
  explicit CompiledCurve(const Poly& p)
      : c(p), cx(differentiate(p, Var::X)), cy(differentiate(p, Var::Y)) {}

  Point gradient(const Point& p) const { return {cx(p), cy(p)}; }
};

}  // namespace limcyc
