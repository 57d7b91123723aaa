#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "limcyc/construct.hpp"
#include "limcyc/dynamics.hpp"
#include "limcyc/error.hpp"

using namespace limcyc;

namespace {

constexpr double kPi = std::numbers::pi;

Poly P(const char* s) { return parse_poly(s); }

VectorField field(const char* p, const char* q) { return {P(p), P(q)}; }

// For r' = g(r), theta' = 1 the cycle at r* has exponent 2 pi g'(r*);
// g' by central differences, independent of the library.
double polar_exponent(const std::function<double(double)>& g, double r) {
  const double h = 1e-5;
  return 2 * kPi * (g(r + h) - g(r - h)) / (2 * h);
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("rotation flow matches cos and sin") {
  const auto tr = flow(field("-y", "x"), {1, 0}, 2 * kPi);
  const Point end = tr.samples().back().point;
  CHECK(std::abs(end[0] - 1.0) < 1e-8);
  CHECK(std::abs(end[1]) < 1e-8);
  for (double t : {0.1, 0.77, 2.5, 4.0, 6.2}) {
    const Point p = tr.at(t);
    CHECK(std::abs(p[0] - std::cos(t)) < 1e-8);
    CHECK(std::abs(p[1] - std::sin(t)) < 1e-8);
  }
}

TEST_CASE("linear flow and backward time") {
  const auto fwd = flow(field("x", "-2y"), {1, 1}, 1.5);
  const Point e = fwd.samples().back().point;
  CHECK(e[0] == doctest::Approx(std::exp(1.5)).epsilon(1e-9));
  CHECK(e[1] == doctest::Approx(std::exp(-3.0)).epsilon(1e-9));
  const auto back = flow(field("x", "-2y"), e, -1.5);
  CHECK(back.t_end() == doctest::Approx(-1.5));
  const Point b = back.samples().back().point;
  CHECK(b[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(b[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("finite-time blowup is an integration error") {
  CHECK(code_of([] { flow(field("x^2", "0"), {1, 0}, 2.0); }) == ErrorCode::Integration);
  CHECK(code_of([] { flow(field("0", "0"), {1, 0}, 1.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("unit-circle cycle") {
  const VectorField x = field("-y+x-x^3-xy^2", "x+y-x^2y-y^3");
  const CycleReport r = refine_cycle(x, {1.3, 0.2});
  const double oracle = polar_exponent([](double r) { return r * (1 - r * r); }, 1.0);
  CHECK(std::abs(r.exponent - oracle) < 1e-4);
  CHECK(std::abs(r.exponent + 4 * kPi) < 1e-6);
  CHECK(r.period == doctest::Approx(2 * kPi).epsilon(1e-8));
  CHECK(r.closure_error < 1e-8);
  CHECK(r.hyperbolic);
  CHECK(r.stable);
  CHECK(std::hypot(r.anchor[0], r.anchor[1]) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.multiplier == doctest::Approx(std::exp(-4 * kPi)).epsilon(1e-5));
  CHECK(r.return_derivative == doctest::Approx(r.multiplier).epsilon(1e-5));
  for (const auto& p : r.orbit) CHECK(std::hypot(p[0], p[1]) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("nested cycles of opposite stability") {
  const BaseField b = base_field({Rat(1), Rat(4)});
  const auto g = [](double r) { return r * (1 - r * r) * (4 - r * r); };
  const auto seeds = b.cycle_seeds();
  REQUIRE(seeds.size() == 2);
  const CycleReport inner = refine_cycle(b.field, {seeds[0][0] * 1.01, 0.0});
  const CycleReport outer = refine_cycle(b.field, {seeds[1][0] * 1.01, 0.0});
  CHECK(inner.exponent == doctest::Approx(polar_exponent(g, 1.0)).epsilon(1e-6));
  CHECK(outer.exponent == doctest::Approx(polar_exponent(g, 2.0)).epsilon(1e-6));
  CHECK(inner.exponent == doctest::Approx(-12 * kPi).epsilon(1e-8));
  CHECK(outer.exponent == doctest::Approx(48 * kPi).epsilon(1e-8));
  CHECK(inner.stable);
  CHECK_FALSE(outer.stable);

  const auto predicted = b.predicted_exponents();
  CHECK(predicted[0] == doctest::Approx(inner.exponent).epsilon(1e-8));
  CHECK(predicted[1] == doctest::Approx(outer.exponent).epsilon(1e-8));

  // Time reversal flips the exponent and keeps the orbit.
  const CycleReport rev = refine_cycle(b.field.reversed(), {seeds[1][0] * 1.01, 0.0});
  CHECK(rev.exponent == doctest::Approx(-outer.exponent).epsilon(1e-8));

  const ExponentEstimate de = divergence_exponent(b.field, outer);
  CHECK(de.value == doctest::Approx(outer.exponent).epsilon(1e-7));

  const auto found = count_cycles(b.field, {-3, 3, -3, 3});
  CHECK(found.size() == 2);
}

TEST_CASE("center and cycle-free fields") {
  const CycleReport c = refine_cycle(field("-y", "x"), {1, 0});
  CHECK_FALSE(c.hyperbolic);
  REQUIRE_FALSE(c.warnings.empty());
  CHECK(c.warnings.front() == kNonHyperbolicWarning);

  CHECK(code_of([] { refine_cycle(field("x", "y"), {1, 0}); }) == ErrorCode::NoCycle);
  CHECK(count_cycles(field("x", "-y"), {-2, 2, -2, 2}).empty());
  CHECK(count_cycles(field("-y", "x"), {-2, 2, -2, 2}).empty());
}

TEST_CASE("cycle on an invariant oval") {
  const Poly circle = P("x^2+y^2-1");
  const ChristopherResult ch = christopher(circle, LinearPoly::from_poly(P("y-2")), Rat(0), Rat(1), {-2, 2, -2, 2});
  const CycleReport on = invariant_oval_cycle(ch.field, circle, {1.0, 0.01});
  const CycleReport free = refine_cycle(ch.field, {1.0, 0.0});
  CHECK(on.exponent == doctest::Approx(free.exponent).epsilon(1e-8));
  CHECK(on.period == doctest::Approx(free.period).epsilon(1e-8));
  CHECK(on.closure_error < 1e-8);
  CHECK(on.hyperbolic);
  for (const auto& p : on.orbit) CHECK(std::abs(evaluate(circle, p[0], p[1])) < 1e-9);
  CHECK(code_of([&] { invariant_oval_cycle(ch.field, circle, {0.0, 0.0}); }) == ErrorCode::InvalidArgument);
}
