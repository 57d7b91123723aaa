#pragma once

#include "limcyc/poly.hpp"

namespace limcyc {

/// Default degree cap for the subresultant gcd.
inline constexpr int kGcdDegreeCap = 10;

/// gcd over Q[x, y], computed as Q[x][y] with the subresultant PRS.
/// Normalized so that the leading coefficient (graded lex) is 1; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);

/// True iff gcd(c, cx, cy) is constant. A constant gcd certifies that the
/// curve c = 0 has finitely many singular points.
/// Throws UnsupportedDegree when deg c exceeds `degree_cap`, InvalidArgument
/// when c is constant.
bool common_factor_free(const Poly& c, const Poly& cx, const Poly& cy, int degree_cap = kGcdDegreeCap);

/// Convenience overload that differentiates c itself.
bool common_factor_free(const Poly& c, int degree_cap = kGcdDegreeCap);

}  // namespace limcyc
