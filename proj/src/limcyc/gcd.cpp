#include "limcyc/gcd.hpp"

#include <utility>
#include <vector>

#include "limcyc/error.hpp"

namespace limcyc {

namespace {

// Dense univariate polynomial in x over Q, lowest degree first, trimmed.
struct UPoly {
  std::vector<Rat> c;

  UPoly() = default;
  explicit UPoly(Rat constant) {
    if (constant != 0) c.push_back(std::move(constant));
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const Rat& lead() const { return c.back(); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  UPoly out;
  out.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
  out.trim();
  return out;
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  UPoly out;
  out.c.assign(std::max(a.c.size(), b.c.size()), Rat(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) out.c[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) out.c[i] -= b.c[i];
  out.trim();
  return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::Internal, "univariate division by zero");
  UPoly r = a;
  UPoly q;
  if (r.degree() >= b.degree()) q.c.assign(static_cast<std::size_t>(r.degree() - b.degree() + 1), Rat(0));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const Rat f = r.lead() / b.lead();
    q.c[static_cast<std::size_t>(shift)] = f;
    for (std::size_t k = 0; k < b.c.size(); ++k) r.c[k + static_cast<std::size_t>(shift)] -= f * b.c[k];
    r.trim();
  }
  q.trim();
  return {q, r};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorCode::Internal, "subresultant PRS: inexact division");
  return q;
}

UPoly monic(UPoly a) {
  if (a.is_zero()) return a;
  const Rat l = a.lead();
  for (auto& x : a.c) x /= l;
  return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

UPoly upow(const UPoly& a, int e) {
  UPoly out(Rat(1));
  for (int k = 0; k < e; ++k) out = out * a;
  return out;
}

// Polynomial in y whose coefficients live in Q[x]; index = power of y.
struct BiPoly {
  std::vector<UPoly> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  const UPoly& lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
};

BiPoly to_bipoly(const Poly& p) {
  BiPoly out;
  if (p.is_zero()) return out;
  out.c.resize(static_cast<std::size_t>(p.degree_in(Var::Y) + 1));
  for (const auto& [m, coef] : p.terms()) {
    UPoly& u = out.c[static_cast<std::size_t>(m.j)];
    if (u.c.size() <= static_cast<std::size_t>(m.i)) u.c.resize(static_cast<std::size_t>(m.i + 1), Rat(0));
    u.c[static_cast<std::size_t>(m.i)] = coef;
  }
  for (auto& u : out.c) u.trim();
  out.trim();
  return out;
}

Poly from_bipoly(const BiPoly& b) {
  Poly out;
  for (std::size_t j = 0; j < b.c.size(); ++j)
    for (std::size_t i = 0; i < b.c[j].c.size(); ++i)
      out.add_term({static_cast<int>(i), static_cast<int>(j)}, b.c[j].c[i]);
  return out;
}

BiPoly scale(const BiPoly& b, const UPoly& s) {
  BiPoly out;
  out.c.reserve(b.c.size());
  for (const auto& u : b.c) out.c.push_back(u * s);
  out.trim();
  return out;
}

BiPoly div_exact(const BiPoly& b, const UPoly& s) {
  BiPoly out;
  out.c.reserve(b.c.size());
  for (const auto& u : b.c) out.c.push_back(exact_div(u, s));
  out.trim();
  return out;
}

UPoly content(const BiPoly& b) {
  UPoly g;
  for (const auto& u : b.c) g = upoly_gcd(g, u);
  return g;
}

// lc(B)^(degA - degB + 1) · A mod B in Q[x][y].
BiPoly prem(const BiPoly& a, const BiPoly& b) {
  BiPoly r = a;
  const UPoly& lb = b.lead();
  int e = a.degree() - b.degree() + 1;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    const UPoly lr = r.lead();
    BiPoly next = scale(r, lb);
    for (std::size_t k = 0; k < b.c.size(); ++k) {
      UPoly& slot = next.c[k + static_cast<std::size_t>(shift)];
      slot = slot - lr * b.c[k];
    }
    next.trim();
    r = std::move(next);
    --e;
  }
  if (e > 0) r = scale(r, upow(lb, e));
  return r;
}

Poly normalize(Poly p) {
  if (p.is_zero()) return p;
  const Rat inv = 1 / p.leading_coeff();
  return p * inv;
}

}  // namespace

Poly poly_gcd(const Poly& pa, const Poly& pb) {
  BiPoly a = to_bipoly(pa);
  BiPoly b = to_bipoly(pb);
  if (b.degree() > a.degree()) std::swap(a, b);
  if (b.is_zero()) return normalize(pa.is_zero() ? pb : from_bipoly(a));

  const UPoly ca = content(a);
  const UPoly cb = content(b);
  const UPoly d = upoly_gcd(ca, cb);
  a = div_exact(a, ca);
  b = div_exact(b, cb);

  UPoly g(Rat(1));
  UPoly h(Rat(1));
  for (;;) {
    const int delta = a.degree() - b.degree();
    BiPoly r = prem(a, b);
    if (r.is_zero()) break;
    if (r.degree() == 0) {
      b = BiPoly{{UPoly(Rat(1))}};
      break;
    }
    a = std::move(b);
    b = div_exact(r, g * upow(h, delta));
    g = a.lead();
    if (delta > 0) h = exact_div(upow(g, delta), upow(h, delta - 1));
  }
  b = div_exact(b, content(b));
  return normalize(from_bipoly(scale(b, d)));
}

bool common_factor_free(const Poly& c, const Poly& cx, const Poly& cy, int degree_cap) {
  if (c.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
  if (c.degree() > degree_cap) {
    throw Error(ErrorCode::UnsupportedDegree,
                "curve degree " + std::to_string(c.degree()) + " exceeds the gcd cap of " + std::to_string(degree_cap));
  }
  const Poly g = poly_gcd(poly_gcd(c, cx), cy);
  return g.degree() <= 0;
}

bool common_factor_free(const Poly& c, int degree_cap) {
  return common_factor_free(c, differentiate(c, Var::X), differentiate(c, Var::Y), degree_cap);
}

}  // namespace limcyc
