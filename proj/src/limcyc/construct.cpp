#include "limcyc/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "limcyc/error.hpp"
#include "limcyc/gcd.hpp"

namespace limcyc {

CofactorCheck cofactor(const Poly& c, const VectorField& x) {
  if (c.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
  const Poly lhs = differentiate(c, Var::X) * x.p + differentiate(c, Var::Y) * x.q;
  auto [quot, rem] = divide_with_remainder(lhs, c);
  CofactorCheck out;
  if (!rem.is_zero()) {
    out.remainder = std::move(rem);
    return out;
  }
  if (!quot.is_zero() && quot.degree() > x.degree() - 1) {
    throw Error(ErrorCode::Internal, "cofactor degree exceeds field degree - 1");
  }
  out.invariant = true;
  out.certificate = InvarianceCertificate{c, x, std::move(quot)};
  return out;
}

void verify_certificate(const InvarianceCertificate& cert) {
  if (cert.curve.is_constant()) throw Error(ErrorCode::InvalidArgument, "certificate curve must be nonconstant");
  const Poly lhs = differentiate(cert.curve, Var::X) * cert.field.p + differentiate(cert.curve, Var::Y) * cert.field.q;
  if (!(lhs - cert.cofactor * cert.curve).is_zero()) {
    throw Error(ErrorCode::NotInvariant, "certificate identity C_x p + C_y q = K C does not hold");
  }
}

ChristopherResult christopher(const Poly& c, const LinearPoly& d, const Rat& alpha, const Rat& beta,
                              const Region& region, int grid_n) {
  if (c.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
  if (d.a == 0 && d.b == 0) throw Error(ErrorCode::InvalidLine, "D must have degree one");
  region.validate();
  if (!common_factor_free(c, kGcdDegreeCap)) {
    throw Error(ErrorCode::DegenerateCurve, "gcd(C, C_x, C_y) is nonconstant: the curve may have a singular component");
  }
  const Poly dp = d.to_poly();
  if (divides(dp, c)) throw Error(ErrorCode::DividingLine, "D = " + format_poly(dp) + " divides C");
  if (alpha * d.a + beta * d.b == 0) throw Error(ErrorCode::DegenerateParameters, "alpha*D_x + beta*D_y = 0");
  std::vector<Oval> ovals = trace_ovals(c, region, grid_n, false);
  if (!line_disjoint_from_ovals(d, ovals)) {
    throw Error(ErrorCode::LineMeetsOval, "D = " + format_poly(dp) + " meets an oval of C = 0");
  }
  const Poly cx = differentiate(c, Var::X);
  const Poly cy = differentiate(c, Var::Y);
  VectorField y{alpha * c - dp * cy, beta * c + dp * cx};
  const Poly k = alpha * cx + beta * cy;
  CofactorCheck check = cofactor(c, y);
  if (!check.invariant || check.certificate->cofactor != k) {
    throw Error(ErrorCode::Internal, "constructed field failed its own cofactor identity");
  }
  if (y.degree() > c.degree()) throw Error(ErrorCode::Internal, "constructed field exceeds the curve degree");
  return {std::move(y), std::move(*check.certificate), std::move(ovals)};
}

LinearPoly default_line(const Poly& c, std::span<const Oval> ovals) {
  double xmax = 1.0;
  if (!ovals.empty()) {
    xmax = -std::numeric_limits<double>::infinity();
    for (const auto& o : ovals) xmax = std::max(xmax, o.bbox.xmax);
  }
  Rat edge;
  const double nearest = std::round(xmax);
  if (std::abs(xmax - nearest) <= 1e-6) {
    edge = Rat(static_cast<long>(nearest));
  } else {
    edge = Rat(mpz_class(static_cast<long>(std::ceil(xmax * 1024.0))), mpz_class(1024));
    edge.canonicalize();
  }
  LinearPoly d{Rat(1), Rat(0), -(edge + 1)};
  while (divides(d.to_poly(), c)) d.c0 -= 1;
  return d;
}

std::pair<Rat, Rat> default_parameters(const LinearPoly& d) {
  if (d.a != 0) return {Rat(1), Rat(0)};
  return {Rat(0), Rat(1)};
}

// ---------------------------------------------------------------------------
// Base fields

std::vector<double> BaseField::radii() const {
  std::vector<double> out;
  for (const auto& rho : square_radii) out.push_back(scale.get_d() * std::sqrt(rho.get_d()));
  return out;
}

std::vector<Point> BaseField::cycle_seeds() const {
  std::vector<Point> out;
  for (double r : radii()) out.push_back({cx.get_d() + r, cy.get_d()});
  return out;
}

std::vector<double> BaseField::predicted_exponents() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < square_radii.size(); ++i) {
    Rat prod(1);
    for (std::size_t j = 0; j < square_radii.size(); ++j) {
      if (j != i) prod *= square_radii[j] - square_radii[i];
    }
    out.push_back(-4.0 * std::numbers::pi * Rat(square_radii[i] * prod).get_d());
  }
  return out;
}

BaseField base_field(const std::vector<Rat>& square_radii) {
  if (square_radii.empty()) throw Error(ErrorCode::InvalidArgument, "base field needs at least one squared radius");
  for (std::size_t i = 0; i < square_radii.size(); ++i) {
    if (square_radii[i] <= 0) throw Error(ErrorCode::InvalidArgument, "squared radii must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (square_radii[i] == square_radii[j]) {
        throw Error(ErrorCode::InvalidArgument,
                    "repeated squared radius " + format_rat(square_radii[i]) + " gives a non-hyperbolic cycle");
      }
    }
  }
  const Poly x = Poly::x();
  const Poly y = Poly::y();
  const Poly s = x * x + y * y;
  Poly f(1);
  for (const auto& rho : square_radii) f *= Poly(rho) - s;
  BaseField out;
  out.field = {-y + x * f, x + y * f};
  out.square_radii = square_radii;
  return out;
}

VectorField relocate(const VectorField& x, const Rat& cx, const Rat& cy, const Rat& scale) {
  if (scale <= 0) throw Error(ErrorCode::InvalidArgument, "relocation scale must be positive");
  return {affine_substitute(x.p, cx, cy, scale) * scale, affine_substitute(x.q, cx, cy, scale) * scale};
}

BaseField relocate(const BaseField& base, const Rat& cx, const Rat& cy, const Rat& scale) {
  BaseField out = base;
  out.field = relocate(base.field, cx, cy, scale);
  out.cx = cx + scale * base.cx;
  out.cy = cy + scale * base.cy;
  out.scale = scale * base.scale;
  return out;
}

// ---------------------------------------------------------------------------
// Composition

CompositionResult compose(const Poly& c, const VectorField& x_base, const InvarianceCertificate& y,
                          const Rat& epsilon) {
  if (epsilon < 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be nonnegative");
  x_base.validate();
  if (y.curve != c) throw Error(ErrorCode::NotInvariant, "certificate belongs to a different curve");
  verify_certificate(y);

  CompositionResult out;
  out.epsilon = epsilon;
  out.z = {c * x_base.p + epsilon * y.field.p, c * x_base.q + epsilon * y.field.q};
  const Poly k = differentiate(c, Var::X) * x_base.p + differentiate(c, Var::Y) * x_base.q + epsilon * y.cofactor;
  CofactorCheck check = cofactor(c, out.z);
  if (!check.invariant || check.certificate->cofactor != k) {
    throw Error(ErrorCode::Internal, "composed field failed the cofactor identity");
  }
  out.certificate = std::move(*check.certificate);
  out.restriction_identity =
      divides(c, out.z.p - epsilon * y.field.p) && divides(c, out.z.q - epsilon * y.field.q);
  if (!out.restriction_identity) throw Error(ErrorCode::Internal, "restriction identity failed");
  out.n = x_base.degree();
  out.c = c.degree();
  if (out.z.degree() > out.n + out.c) throw Error(ErrorCode::Internal, "composed degree exceeds n + c");
  if (epsilon == 0) out.warnings.emplace_back("epsilon is zero: every point of C = 0 is singular");
  return out;
}

namespace {

double orbit_diameter(const std::vector<Point>& pts) {
  double xmin = pts[0][0], xmax = xmin, ymin = pts[0][1], ymax = ymin;
  for (const auto& p : pts) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  return std::hypot(xmax - xmin, ymax - ymin);
}

std::vector<CycleReport> refine_base(const BaseField& base, const CycleOptions& opts) {
  std::vector<CycleReport> out;
  for (const auto& seed : base.cycle_seeds()) {
    CycleReport r = refine_cycle(base.field, seed, std::nullopt, opts);
    if (!r.hyperbolic) throw Error(ErrorCode::Internal, "catalog cycle of the base field is not hyperbolic");
    out.push_back(std::move(r));
  }
  return out;
}

// The disk around the base cycles must avoid C = 0.
void check_ball(const Poly& c, const BaseField& base, const std::vector<CycleReport>& base_reports) {
  const CompiledPoly cc(c);
  const Point center{base.cx.get_d(), base.cy.get_d()};
  double radius = 0.0;
  double min_abs = std::numeric_limits<double>::infinity();
  int sign = 0;
  auto visit = [&](const Point& p) {
    const double v = cc(p);
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      throw Error(ErrorCode::RelocationNeeded,
                  "the base cycles' disk meets C = 0; relocate the base field away from the curve");
    }
    sign = s;
  };
  for (const auto& r : base_reports) {
    for (const auto& p : r.orbit) {
      radius = std::max(radius, distance(p, center));
      min_abs = std::min(min_abs, std::abs(cc(p)));
      visit(p);
    }
  }
  if (!(min_abs > 0)) throw Error(ErrorCode::RelocationNeeded, "C vanishes on a base cycle");
  radius *= 1.05;
  visit(center);
  for (int i = 1; i <= 32; ++i) {
    const double r = radius * i / 32.0;
    for (int j = 0; j < 256; ++j) {
      const double th = 2.0 * std::numbers::pi * j / 256.0;
      visit({center[0] + r * std::cos(th), center[1] + r * std::sin(th)});
    }
  }
}

struct CheckOutcome {
  std::optional<CycleReport> report;
  std::string failure;
};

// With `curve` set the cycle is followed on the invariant curve itself.
CheckOutcome check_cycle(const VectorField& z, const Point& seed, const std::vector<Point>& target,
                         const SearchOptions& opts, const Poly* curve = nullptr) {
  CheckOutcome out;
  CycleOptions cycle = opts.cycle;
  // A persisted cycle stays near its target, so far excursions are failures.
  if (cycle.escape_radius <= 0) cycle.escape_radius = 4.0 * orbit_diameter(target);
  try {
    CycleReport r = curve ? invariant_oval_cycle(z, *curve, seed, cycle) : refine_cycle(z, seed, std::nullopt, cycle);
    if (!r.hyperbolic) {
      out.failure = "not hyperbolic (exponent " + std::to_string(r.exponent) + ")";
      return out;
    }
    const double hd = hausdorff_distance(r.orbit, target);
    const double limit = opts.persistence_radius * orbit_diameter(target);
    if (hd > limit) {
      out.failure = "converged to a different orbit (Hausdorff distance " + std::to_string(hd) + ")";
      return out;
    }
    out.report = std::move(r);
  } catch (const Error& e) {
    out.failure = std::string(error_name(e.code())) + ": " + e.what();
  }
  return out;
}

std::optional<CompositionResult> attempt(const Poly& c, const BaseField& base, const InvarianceCertificate& y,
                                         const std::vector<Oval>& ovals, const std::vector<CycleReport>& base_reports,
                                         const Rat& eps, const SearchOptions& opts, std::string& diag) {
  CompositionResult res = compose(c, base.field, y, eps);
  std::ostringstream why;
  bool ok = true;
  for (std::size_t i = 0; i < ovals.size() && ok; ++i) {
    CheckOutcome o = check_cycle(res.z, ovals[i].vertices.front(), ovals[i].vertices, opts, &c);
    if (!o.report) {
      why << "oval " << i << ": " << o.failure << "; ";
      ok = false;
    } else {
      res.oval_reports.push_back(std::move(*o.report));
    }
  }
  for (std::size_t i = 0; i < base_reports.size() && ok; ++i) {
    CheckOutcome o = check_cycle(res.z, base_reports[i].anchor, base_reports[i].orbit, opts);
    if (!o.report) {
      why << "base cycle " << i << ": " << o.failure << "; ";
      ok = false;
    } else {
      res.base_reports.push_back(std::move(*o.report));
    }
  }
  if (!ok) {
    diag = "epsilon " + format_rat(eps) + ": " + why.str();
    return std::nullopt;
  }
  return res;
}

}  // namespace

CompositionResult epsilon_search(const Poly& c, const BaseField& base, const InvarianceCertificate& y,
                                 const Region& region, const SearchOptions& opts) {
  region.validate();
  const std::vector<Oval> ovals = trace_ovals(c, region, opts.grid_n);
  const std::vector<CycleReport> base_reports = refine_base(base, opts.cycle);
  check_ball(c, base, base_reports);
  std::vector<std::string> diags;
  Rat eps(1);
  for (int k = 0; k <= opts.max_halvings; ++k, eps /= 2) {
    std::string diag;
    if (auto res = attempt(c, base, y, ovals, base_reports, eps, opts, diag)) return std::move(*res);
    diags.push_back(diag);
  }
  std::string msg = "no epsilon found after " + std::to_string(opts.max_halvings) + " halvings; first failures: ";
  for (std::size_t i = 0; i < std::min<std::size_t>(diags.size(), 3); ++i) msg += diags[i];
  msg += " last: " + diags.back();
  throw Error(ErrorCode::SearchFailure, msg);
}

CompositionResult verify_composition(const Poly& c, const BaseField& base, const InvarianceCertificate& y,
                                     const Region& region, const Rat& epsilon, const SearchOptions& opts) {
  if (epsilon <= 0) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  region.validate();
  const std::vector<Oval> ovals = trace_ovals(c, region, opts.grid_n);
  const std::vector<CycleReport> base_reports = refine_base(base, opts.cycle);
  check_ball(c, base, base_reports);
  std::string diag;
  if (auto res = attempt(c, base, y, ovals, base_reports, epsilon, opts, diag)) return std::move(*res);
  throw Error(ErrorCode::SearchFailure, "composition check failed at " + diag);
}

// ---------------------------------------------------------------------------
// Kolmogorov and game systems

namespace {

// Every catalog circle must lie strictly inside the box (exact test).
void require_inside(const BaseField& base, const std::optional<Rat>& lo, const std::optional<Rat>& hi,
                    const char* where) {
  const Rat rho_max = *std::max_element(base.square_radii.begin(), base.square_radii.end());
  const Rat r2 = base.scale * base.scale * rho_max;
  for (const Rat& center : {base.cx, base.cy}) {
    if (lo) {
      const Rat gap = center - *lo;
      if (gap <= 0 || gap * gap <= r2) {
        throw Error(ErrorCode::RelocationNeeded, std::string("base cycles are not inside ") + where);
      }
    }
    if (hi) {
      const Rat gap = *hi - center;
      if (gap <= 0 || gap * gap <= r2) {
        throw Error(ErrorCode::RelocationNeeded, std::string("base cycles are not inside ") + where);
      }
    }
  }
}

Region working_region(const BaseField& base) {
  double r = 0.0;
  for (double v : base.radii()) r = std::max(r, v);
  const double cx = base.cx.get_d(), cy = base.cy.get_d();
  return {std::min(-10.0, cx - r - 1.0), std::max(10.0, cx + r + 1.0), std::min(-10.0, cy - r - 1.0),
          std::max(10.0, cy + r + 1.0)};
}

struct InvariantLine {
  Poly line;
  Var var;      // component index: X -> p, Y -> q
  Rat root;     // the line is var = root
};

CompositionResult build_with_lines(const Poly& c, const BuilderInput& in, const SearchOptions& opts,
                                   const std::vector<InvariantLine>& lines, const Poly& fx, const Poly& fy,
                                   const std::optional<Rat>& lo, const std::optional<Rat>& hi, const char* where) {
  const BaseField base = relocate(base_field(in.square_radii), in.cx, in.cy, in.scale);
  require_inside(base, lo, hi, where);
  const Region region = working_region(base);
  const std::vector<Oval> ovals = trace_ovals(c, region, opts.grid_n);
  const LinearPoly d = in.line ? *in.line : default_line(c, ovals);
  std::pair<Rat, Rat> ab = default_parameters(d);
  if (in.alpha || in.beta) ab = {in.alpha.value_or(Rat(0)), in.beta.value_or(Rat(0))};
  const ChristopherResult ch = christopher(c, d, ab.first, ab.second, region, opts.grid_n);
  CompositionResult res = epsilon_search(c, base, ch.certificate, region, opts);

  auto [pt, pr] = divide_with_remainder(res.z.p, fx);
  auto [qt, qr] = divide_with_remainder(res.z.q, fy);
  if (!pr.is_zero() || !qr.is_zero()) throw Error(ErrorCode::Internal, "composed field lost its factored form");
  res.reduced = VectorField{std::move(pt), std::move(qt)};

  for (const auto& l : lines) {
    CofactorCheck chk = cofactor(l.line, res.z);
    if (!chk.invariant) throw Error(ErrorCode::Internal, "invariant line " + format_poly(l.line) + " lost");
    res.line_certificates.push_back(std::move(*chk.certificate));
    // Along x = r the field is (0, q(r, y)); finitely many zeros unless q(r, y) vanishes identically.
    const Poly& along = l.var == Var::X ? res.z.q : res.z.p;
    if (substitute(along, l.var, l.root).is_zero()) {
      throw Error(ErrorCode::DegenerateCurve, "line " + format_poly(l.line) + " consists of singular points");
    }
  }
  auto inside = [&](const Point& p) {
    for (double v : {p[0], p[1]}) {
      if (lo && !(v > lo->get_d())) return false;
      if (hi && !(v < hi->get_d())) return false;
    }
    return true;
  };
  for (const auto* reports : {&res.base_reports, &res.oval_reports}) {
    for (const auto& r : *reports) {
      if (!std::all_of(r.orbit.begin(), r.orbit.end(), inside)) {
        throw Error(ErrorCode::Internal, std::string("a reported cycle is not inside ") + where);
      }
    }
  }
  return res;
}

}  // namespace

CompositionResult build_kolmogorov(const BuilderInput& in, const SearchOptions& opts) {
  const Poly x = Poly::x();
  const Poly y = Poly::y();
  return build_with_lines(x * y, in, opts, {{x, Var::X, Rat(0)}, {y, Var::Y, Rat(0)}}, x, y, Rat(0), std::nullopt,
                          "the open first quadrant");
}

CompositionResult build_game(const BuilderInput& in, const SearchOptions& opts) {
  const Poly x = Poly::x();
  const Poly y = Poly::y();
  const Poly fx = x * (x - Poly(1));
  const Poly fy = y * (y - Poly(1));
  return build_with_lines(fx * fy, in, opts,
                          {{x, Var::X, Rat(0)}, {x - Poly(1), Var::X, Rat(1)}, {y, Var::Y, Rat(0)},
                           {y - Poly(1), Var::Y, Rat(1)}},
                          fx, fy, Rat(0), Rat(1), "the open unit square");
}

}  // namespace limcyc
