#include "limcyc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "limcyc/error.hpp"

namespace limcyc {

namespace {

constexpr long kMaxExponent = 10000;

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Poly parse() {
    Poly result;
    skip_ws();
    if (at_end()) fail("empty polynomial");
    parse_term(result, false);
    for (;;) {
      skip_ws();
      if (at_end()) break;
      char op = peek();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      ++pos_;
      skip_ws();
      parse_term(result, op == '-');
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

  std::string digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  long exponent() {
    if (!std::isdigit(static_cast<unsigned char>(peek())) || peek() == '0') {
      fail("expected positive integer exponent");
    }
    std::size_t start = pos_;
    std::string d = digits();
    if (d.size() > 5 || std::stol(d) > kMaxExponent) {
      throw ParseError(start, "exponent too large");
    }
    return std::stol(d);
  }

  void parse_term(Poly& acc, bool negate) {
    if (peek() == '-') {
      negate = !negate;
      ++pos_;
      skip_ws();
    }
    Rat coef = 1;
    bool has_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      has_coef = true;
      mpz_class num(digits());
      mpz_class den = 1;
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        std::size_t den_pos = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        den = mpz_class(digits());
        if (den == 0) throw ParseError(den_pos, "zero denominator");
        if (text_[den_pos] == '0') throw ParseError(den_pos, "denominator must not have leading zero");
      }
      coef = Rat(num, den);
      coef.canonicalize();
      skip_ws();
    }
    long i = 0;
    long j = 0;
    bool has_var = false;
    if (peek() == 'x') {
      has_var = true;
      ++pos_;
      skip_ws();
      i = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        i = exponent();
      }
      skip_ws();
    }
    if (peek() == 'y') {
      has_var = true;
      ++pos_;
      skip_ws();
      j = 1;
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        j = exponent();
      }
    }
    if (!has_coef && !has_var) fail("expected term");
    if (negate) coef = -coef;
    acc.add_term({static_cast<int>(i), static_cast<int>(j)}, coef);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write_monomial(std::string& out, const Monomial& m) {
  if (m.i > 0) {
    out += 'x';
    if (m.i > 1) out += '^' + std::to_string(m.i);
  }
  if (m.j > 0) {
    out += 'y';
    if (m.j > 1) out += '^' + std::to_string(m.j);
  }
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::size_t k = 0;
  auto skip = [&] {
    while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
  };
  auto integer = [&](bool allow_sign) {
    std::size_t start = k;
    if (allow_sign && k < text.size() && (text[k] == '-' || text[k] == '+')) ++k;
    std::size_t digits_start = k;
    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
    if (k == digits_start) throw ParseError(k, "expected digits in rational");
    std::string s(text.substr(start, k - start));
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    return mpz_class(s);
  };
  skip();
  mpz_class num = integer(true);
  mpz_class den = 1;
  skip();
  if (k < text.size() && text[k] == '/') {
    ++k;
    skip();
    std::size_t den_pos = k;
    den = integer(false);
    if (den == 0) throw ParseError(den_pos, "zero denominator");
    skip();
  }
  if (k != text.size()) throw ParseError(k, "trailing characters in rational");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rat(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Poly::Poly(const Rat& constant) {
  if (constant != 0) terms_.emplace(Monomial{0, 0}, constant);
}

Poly Poly::monomial(const Rat& coeff, int i, int j) {
  Poly p;
  p.add_term({i, j}, coeff);
  return p;
}

int Poly::degree() const {
  return terms_.empty() ? -1 : terms_.begin()->first.degree();
}

int Poly::degree_in(Var v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, v == Var::X ? m.i : m.j);
  return d;
}

Rat Poly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out;
  Rat prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term({ma.i + mb.i, ma.j + mb.j}, prod);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(const Rat& s) {
  if (s == 0) {
    terms_.clear();
  } else {
    for (auto& [m, c] : terms_) c *= s;
  }
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly pow(const Poly& p, int e) {
  Poly result(1);
  Poly base = p;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

Poly arith(ArithOp op, const Poly& lhs, const Poly& rhs) {
  switch (op) {
    case ArithOp::Add: return lhs + rhs;
    case ArithOp::Sub: return lhs - rhs;
    case ArithOp::Mul: return lhs * rhs;
  }
  return {};
}

Poly scale(const Poly& p, const Rat& s) { return p * s; }

Poly differentiate(const Poly& p, Var v) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    int e = v == Var::X ? m.i : m.j;
    if (e == 0) continue;
    Monomial dm = v == Var::X ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
    out.add_term(dm, c * e);
  }
  return out;
}

double evaluate(const Poly& p, double x, double y) {
  if (p.is_zero()) return 0.0;
  // Horner in x over coefficients that are themselves Horner in y.
  const int dx = p.degree_in(Var::X);
  const int dy = p.degree_in(Var::Y);
  std::vector<double> dense(static_cast<std::size_t>((dx + 1) * (dy + 1)), 0.0);
  for (const auto& [m, c] : p.terms()) dense[static_cast<std::size_t>(m.i * (dy + 1) + m.j)] = c.get_d();
  double acc = 0.0;
  for (int i = dx; i >= 0; --i) {
    double row = 0.0;
    for (int j = dy; j >= 0; --j) row = row * y + dense[static_cast<std::size_t>(i * (dy + 1) + j)];
    acc = acc * x + row;
  }
  return acc;
}

Rat evaluate(const Poly& p, const Rat& x, const Rat& y) {
  Rat acc = 0;
  Rat xp;
  Rat yp;
  for (const auto& [m, c] : p.terms()) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(m.i));
    mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(m.i));
    xp = Rat(num, den);
    mpz_pow_ui(num.get_mpz_t(), y.get_num_mpz_t(), static_cast<unsigned long>(m.j));
    mpz_pow_ui(den.get_mpz_t(), y.get_den_mpz_t(), static_cast<unsigned long>(m.j));
    yp = Rat(num, den);
    acc += c * xp * yp;
  }
  return acc;
}

Division divide_with_remainder(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  const Monomial lm = den.leading_monomial();
  const Rat lc = den.leading_coeff();
  Division out;
  Poly rest = num;
  Rat q;
  while (!rest.is_zero()) {
    const Monomial m = rest.leading_monomial();
    const Rat c = rest.leading_coeff();
    if (m.i >= lm.i && m.j >= lm.j) {
      const Monomial shift{m.i - lm.i, m.j - lm.j};
      q = c / lc;
      out.quotient.add_term(shift, q);
      for (const auto& [dm, dc] : den.terms()) {
        rest.add_term({dm.i + shift.i, dm.j + shift.j}, -q * dc);
      }
    } else {
      out.remainder.add_term(m, c);
      rest.add_term(m, -c);
    }
  }
  return out;
}

bool divides(const Poly& den, const Poly& num) {
  return divide_with_remainder(num, den).remainder.is_zero();
}

Poly affine_substitute(const Poly& p, const Rat& cx, const Rat& cy, const Rat& s) {
  if (s <= 0) throw Error(ErrorCode::InvalidArgument, "affine_substitute: scale must be positive");
  const Rat inv = 1 / s;
  const Poly lx = Poly::monomial(inv, 1, 0) - Poly(cx * inv);
  const Poly ly = Poly::monomial(inv, 0, 1) - Poly(cy * inv);
  const int dx = std::max(p.degree_in(Var::X), 0);
  const int dy = std::max(p.degree_in(Var::Y), 0);
  std::vector<Poly> px{Poly(1)};
  std::vector<Poly> py{Poly(1)};
  for (int k = 1; k <= dx; ++k) px.push_back(px.back() * lx);
  for (int k = 1; k <= dy; ++k) py.push_back(py.back() * ly);
  Poly out;
  for (const auto& [m, c] : p.terms()) out += c * (px[static_cast<std::size_t>(m.i)] * py[static_cast<std::size_t>(m.j)]);
  return out;
}

Poly substitute(const Poly& p, Var v, const Rat& value) {
  Poly out;
  for (const auto& [m, c] : p.terms()) {
    int e = v == Var::X ? m.i : m.j;
    Rat f = c;
    for (int k = 0; k < e; ++k) f *= value;
    out.add_term(v == Var::X ? Monomial{0, m.j} : Monomial{m.i, 0}, f);
  }
  return out;
}

Poly parse_poly(std::string_view text) { return PolyParser(text).parse(); }

std::string format_poly(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    first = false;
    Rat a = abs(c);
    if (m.degree() == 0 || a != 1) out += a.get_str();
    write_monomial(out, m);
  }
  return out;
}

LinearPoly LinearPoly::from_poly(const Poly& p) {
  if (p.degree() != 1) {
    throw Error(ErrorCode::InvalidArgument, "line must be a polynomial of degree one, got '" + format_poly(p) + "'");
  }
  return {p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0)};
}

Poly LinearPoly::to_poly() const {
  Poly out;
  out.add_term({1, 0}, a);
  out.add_term({0, 1}, b);
  out.add_term({0, 0}, c0);
  return out;
}

}  // namespace limcyc
