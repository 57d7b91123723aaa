#include <random>

#include "doctest.h"
#include "limcyc/error.hpp"
#include "limcyc/gcd.hpp"
#include "limcyc/poly.hpp"
#include "support.hpp"

using namespace limcyc;
using limcyc::testing::rat;

namespace {

Poly P(const char* s) { return parse_poly(s); }

}  // namespace

TEST_CASE("parse reads the grammar examples") {
  const Poly c = P("x^2+y^2-1");
  CHECK(c.terms().size() == 3);
  CHECK(c.coeff(2, 0) == 1);
  CHECK(c.coeff(0, 2) == 1);
  CHECK(c.coeff(0, 0) == -1);

  const Poly h = P("1/2 x y - y");
  CHECK(h.terms().size() == 2);
  CHECK(h.coeff(1, 1) == rat(1, 2));
  CHECK(h.coeff(0, 1) == -1);

  const Poly s = P("x^2 + 2x^2");
  CHECK(s.terms().size() == 1);
  CHECK(s.coeff(2, 0) == 3);
}

TEST_CASE("parse rejects malformed text with an offset") {
  CHECK_THROWS_AS(P("x^"), ParseError);
  CHECK_THROWS_AS(P("1/0 x"), Error);
  CHECK_THROWS_AS(P(""), ParseError);
  CHECK_THROWS_AS(P("x*y"), ParseError);
  try {
    P("x + + y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() > 0);
    CHECK(e.code() == ErrorCode::Parse);
  }
}

TEST_CASE("format is canonical and round-trips") {
  CHECK(format_poly(P("y - 1/2 + 2 x y + x^2")) == "x^2+2xy+y-1/2");
  CHECK(format_poly(Poly()) == "0");
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const Poly p = limcyc::testing::random_poly(rng, 6);
    CHECK(P(format_poly(p).c_str()) == p);
  }
}

TEST_CASE("arith examples") {
  CHECK(arith(ArithOp::Mul, P("x+y"), P("x-y")) == P("x^2-y^2"));
  CHECK(arith(ArithOp::Add, P("x^2"), P("-x^2")).is_zero());
  CHECK(arith(ArithOp::Add, P("x^2"), P("-x^2")).degree() == -1);
  CHECK(scale(P("x^2+y^2-1"), Rat(2)) == P("2x^2+2y^2-2"));
  CHECK(arith(ArithOp::Sub, P("x"), P("x")) == Poly());
}

TEST_CASE("ring axioms hold on random triples") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 500; ++k) {
    const Poly a = limcyc::testing::random_poly(rng, 6, 3);
    const Poly b = limcyc::testing::random_poly(rng, 6, 3);
    const Poly c = limcyc::testing::random_poly(rng, 6, 3);
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
    REQUIRE(a + b == b + a);
    if (!a.is_zero() && !b.is_zero()) REQUIRE((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("multiplication agrees with exact evaluation") {
  // Evaluation at a rational point is a ring homomorphism, computed here
  // monomial by monomial without the library's evaluator.
  auto eval = [](const Poly& p, const Rat& x, const Rat& y) {
    Rat acc = 0;
    for (const auto& [m, c] : p.terms()) {
      Rat t = c;
      for (int i = 0; i < m.i; ++i) t *= x;
      for (int j = 0; j < m.j; ++j) t *= y;
      acc += t;
    }
    return acc;
  };
  std::mt19937_64 rng(13);
  for (int k = 0; k < 100; ++k) {
    const Poly a = limcyc::testing::random_poly(rng, 5);
    const Poly b = limcyc::testing::random_poly(rng, 5);
    const Rat x = limcyc::testing::random_rat(rng), y = limcyc::testing::random_rat(rng);
    CHECK(eval(a * b, x, y) == eval(a, x, y) * eval(b, x, y));
    CHECK(evaluate(a, x, y) == eval(a, x, y));
  }
}

TEST_CASE("differentiate examples and product rule") {
  CHECK(differentiate(P("x^2y + 3y"), Var::X) == P("2xy"));
  CHECK(differentiate(P("x^2+y^2-1"), Var::Y) == P("2y"));
  CHECK(differentiate(Poly(5), Var::X).is_zero());
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const Poly a = limcyc::testing::random_poly(rng, 5);
    const Poly b = limcyc::testing::random_poly(rng, 5);
    for (Var v : {Var::X, Var::Y}) {
      REQUIRE(differentiate(a * b, v) == differentiate(a, v) * b + a * differentiate(b, v));
      REQUIRE(differentiate(a + b, v) == differentiate(a, v) + differentiate(b, v));
    }
  }
}

TEST_CASE("evaluate examples") {
  CHECK(evaluate(P("x^2+y^2-1"), 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(evaluate(P("xy"), 0.0, 7.0) == 0.0);
  CHECK(evaluate(P("x^2+y^2-1"), rat(3, 5), rat(4, 5)) == 0);
}

TEST_CASE("division examples and round trip") {
  const Division d1 = divide_with_remainder(P("2x^2 y + 2y^3 - 2y"), P("x^2+y^2-1"));
  CHECK(d1.quotient == P("2y"));
  CHECK(d1.remainder.is_zero());
  const Division d2 = divide_with_remainder(P("x^2+y^2-1"), P("xy"));
  CHECK(!d2.remainder.is_zero());
  const Division d3 = divide_with_remainder(P("x^2-y^2"), P("x+y"));
  CHECK(d3.quotient == P("x-y"));
  CHECK(d3.remainder.is_zero());
  CHECK_THROWS_AS(divide_with_remainder(P("x"), Poly()), Error);

  std::mt19937_64 rng(19);
  for (int k = 0; k < 300; ++k) {
    const Poly num = limcyc::testing::random_poly(rng, 6);
    Poly den = limcyc::testing::random_poly(rng, 3);
    if (den.is_zero()) continue;
    const Division d = divide_with_remainder(num, den);
    REQUIRE(d.quotient * den + d.remainder == num);
    const Monomial lead = den.leading_monomial();
    for (const auto& [m, c] : d.remainder.terms()) {
      REQUIRE(!(m.i >= lead.i && m.j >= lead.j));
    }
  }
}

TEST_CASE("affine substitution") {
  CHECK(affine_substitute(P("x^2+y^2-1"), Rat(3), Rat(3), Rat(1)) == P("x^2+y^2-6x-6y+17"));
  CHECK(affine_substitute(P("x"), Rat(0), Rat(0), Rat(2)) == P("1/2 x"));
  CHECK(affine_substitute(P("x^2+y^2-1"), Rat(0), Rat(0), rat(1, 2)) == P("4x^2+4y^2-1"));
  CHECK_THROWS_AS(affine_substitute(P("x"), Rat(0), Rat(0), Rat(0)), Error);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const Poly p = limcyc::testing::random_poly(rng, 6);
    REQUIRE(affine_substitute(p, Rat(0), Rat(0), Rat(1)) == p);
    // Substituting and undoing the map is the identity.
    const Rat cx = limcyc::testing::random_rat(rng), cy = limcyc::testing::random_rat(rng);
    const Rat s = rat(1 + k % 4, 1 + k % 3);
    const Poly there = affine_substitute(p, cx, cy, s);
    REQUIRE(there.degree() == p.degree());
    const Rat inv = 1 / s;
    REQUIRE(affine_substitute(there, Rat(-cx * inv), Rat(-cy * inv), inv) == p);
  }
}

TEST_CASE("common factor test") {
  CHECK(common_factor_free(P("x^2+y^2-1")));
  CHECK_FALSE(common_factor_free(P("x^2y^2")));
  CHECK(common_factor_free(P("xy")));
  CHECK_FALSE(common_factor_free(P("x^4+2x^2y^2+y^4-2x^2-2y^2+1")));
  CHECK_THROWS_AS(common_factor_free(P("x^11+y")), Error);
  try {
    common_factor_free(P("x^11+y"));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDegree);
  }
}

TEST_CASE("gcd recovers a planted factor") {
  std::mt19937_64 rng(29);
  int checked = 0;
  for (int k = 0; k < 60; ++k) {
    const Poly g = limcyc::testing::random_poly(rng, 2);
    const Poly a = limcyc::testing::random_poly(rng, 2);
    const Poly b = limcyc::testing::random_poly(rng, 2);
    if (g.degree() < 1 || a.is_zero() || b.is_zero()) continue;
    const Poly h = poly_gcd(g * a, g * b);
    REQUIRE(divides(h, g * a));
    REQUIRE(divides(h, g * b));
    REQUIRE(divides(g, h));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("linear polynomials") {
  const LinearPoly d = LinearPoly::from_poly(P("y-2"));
  CHECK(d.a == 0);
  CHECK(d.b == 1);
  CHECK(d.c0 == -2);
  CHECK(d.to_poly() == P("y-2"));
  CHECK_THROWS_AS(LinearPoly::from_poly(P("3")), Error);
  CHECK_THROWS_AS(LinearPoly::from_poly(P("x^2")), Error);
}
