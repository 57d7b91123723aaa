#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace limcyc {

/// Exact rational. GMP keeps results of arithmetic canonical (lowest terms,
/// positive denominator, zero as 0/1).
using Rat = mpq_class;

/// Parses "n" or "n/d"; throws ParseError on malformed text or d == 0.
Rat parse_rat(std::string_view text);

/// Always "num/den" (e.g. "3/1"), the serialized form of a rational.
std::string format_rat(const Rat& r);

/// Exponent pair of x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;

  int degree() const { return i + j; }
  bool operator==(const Monomial&) const = default;
};

/// Graded lexicographic order with x > y, largest first. The first entry of
/// a Poly term map is therefore its leading term.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.i > b.i;
  }
};

enum class Var { X, Y };

/// Sparse bivariate polynomial with rational coefficients. No stored
/// coefficient is zero, so equality of term maps is equality of polynomials.
class Poly {
 public:
  using Terms = std::map<Monomial, Rat, GrlexGreater>;

  Poly() = default;
  Poly(const Rat& constant);  // NOLINT(google-explicit-constructor)
  Poly(long constant) : Poly(Rat(constant)) {}  // NOLINT

  static Poly monomial(const Rat& coeff, int i, int j);
  static Poly x() { return monomial(1, 1, 0); }
  static Poly y() { return monomial(1, 0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return degree() <= 0; }

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(Var v) const;

  Rat coeff(int i, int j) const;
  Monomial leading_monomial() const { return terms_.begin()->first; }
  const Rat& leading_coeff() const { return terms_.begin()->second; }

  /// Adds c·x^i y^j in place, dropping the entry if it cancels.
  void add_term(const Monomial& m, const Rat& c);

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rat& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  Poly operator-() const;

  bool operator==(const Poly& other) const { return terms_ == other.terms_; }

 private:
  Terms terms_;
};

Poly pow(const Poly& p, int e);

enum class ArithOp { Add, Sub, Mul };
Poly arith(ArithOp op, const Poly& lhs, const Poly& rhs);
Poly scale(const Poly& p, const Rat& s);

Poly differentiate(const Poly& p, Var v);

/// Horner evaluation in double precision.
double evaluate(const Poly& p, double x, double y);
/// Exact evaluation.
Rat evaluate(const Poly& p, const Rat& x, const Rat& y);

struct Division {
  Poly quotient;
  Poly remainder;
};

/// Multivariate division by a single divisor under graded lex (x > y).
/// num = quotient·den + remainder and no remainder term is divisible by the
/// leading monomial of den.
Division divide_with_remainder(const Poly& num, const Poly& den);

/// True iff den divides num exactly.
bool divides(const Poly& den, const Poly& num);

/// p((x - cx)/s, (y - cy)/s), expanded.
Poly affine_substitute(const Poly& p, const Rat& cx, const Rat& cy, const Rat& s);

/// p with x (or y) replaced by a rational constant.
Poly substitute(const Poly& p, Var v, const Rat& value);

/// Reads the polynomial text grammar:
///   poly := term (('+'|'-') term)*,  term := coef? ('x'('^'n)?)? ('y'('^'n)?)?
/// Whitespace is allowed between tokens and a leading '-' may precede a
/// coefficient-free term ("-x").
Poly parse_poly(std::string_view text);

/// Canonical text, graded lex order, no spaces ("x^2+2xy-1/2y").
std::string format_poly(const Poly& p);

/// a·x + b·y + c0 with (a, b) != (0, 0).
struct LinearPoly {
  Rat a;
  Rat b;
  Rat c0;

  /// Throws InvalidArgument unless p has degree exactly one.
  static LinearPoly from_poly(const Poly& p);
  Poly to_poly() const;
  double operator()(double x, double y) const {
    return a.get_d() * x + b.get_d() * y + c0.get_d();
  }
};

}  // namespace limcyc
