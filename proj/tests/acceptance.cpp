// Runs every acceptance criterion with its tolerance and time budget and
// prints one PASS/FAIL line each. Usage: limcyc_acceptance PATH_TO_CLI
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <utility>
#include <vector>

#include "limcyc/bounds.hpp"
#include "limcyc/construct.hpp"
#include "limcyc/error.hpp"
#include "limcyc/quadrature.hpp"
#include "support.hpp"

using namespace limcyc;
using limcyc::testing::rat;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Poly P(const char* s) { return parse_poly(s); }

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Outcome cofactor_exactness() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  int passed = 0;
  int attempts = 0;
  while (passed < 500 && attempts < 5000) {
    ++attempts;
    const Poly c = limcyc::testing::random_poly(rng, 1 + attempts % 4);
    if (c.degree() < 1) continue;
    const Rat a = limcyc::testing::random_rat(rng), b = limcyc::testing::random_rat(rng);
    const LinearPoly d{limcyc::testing::random_rat(rng), limcyc::testing::random_rat(rng),
                       limcyc::testing::random_rat(rng) + 12};
    try {
      const ChristopherResult res = christopher(c, d, a, b, {-1, 1, -1, 1}, 32);
      const Poly expected = a * differentiate(c, Var::X) + b * differentiate(c, Var::Y);
      const Poly lhs = differentiate(c, Var::X) * res.field.p + differentiate(c, Var::Y) * res.field.q;
      out.require(res.certificate.cofactor == expected, "cofactor differs from alpha C_x + beta C_y");
      out.require((lhs - expected * c).is_zero(), "nonzero symbolic remainder");
      ++passed;
    } catch (const Error&) {
      // Inputs failing a precondition are redrawn.
    }
  }
  out.require(passed == 500, "only " + str(passed) + " cases passed preconditions");
  out.detail = out.ok ? str(passed) + " cases, zero remainder" : out.detail;
  return out;
}

Outcome green_identity() {
  Outcome out;
  const Poly c = P("x^2+y^2-1");
  const LinearPoly d = LinearPoly::from_poly(P("y-2"));
  const ChristopherResult y = christopher(c, d, Rat(0), Rat(1), {-2, 2, -2, 2});
  out.require(y.ovals.size() == 1, "expected one oval");
  if (!out.ok) return out;
  const double closed = 2 * kPi * (2 / std::sqrt(3.0) - 1);
  // Independent oracle: Simpson on the disk slices after x = sin u.
  const int n = 4000;
  const double h = kPi / n;
  double s = 0;
  for (int k = 0; k <= n; ++k) {
    const double cu = std::cos(-kPi / 2 + k * h);
    const double f = (1 / (2 - cu) - 1 / (2 + cu)) * cu;
    s += (k == 0 || k == n ? 1.0 : (k % 2 ? 4.0 : 2.0)) * f;
  }
  const double oracle = s * h / 3;
  out.require(std::abs(oracle - closed) / closed < 1e-8, "quadrature oracle disagrees with closed form");
  const double flux = green_flux(y.ovals[0], d, Rat(0), Rat(1), 1e-10, &c);
  const CycleReport r = refine_cycle(y.field, y.ovals[0].vertices.front());
  const double rel = std::abs(std::abs(r.exponent) - flux) / flux;
  out.require(std::abs(flux - closed) / closed < 1e-6, "green flux off the closed form");
  out.require(rel < 1e-6, "exponent " + str(r.exponent) + " vs flux " + str(flux));
  out.detail = out.ok ? "|exponent| " + str(std::abs(r.exponent)) + ", flux " + str(flux) + ", rel " + str(rel)
                      : out.detail;
  return out;
}

Outcome polar_oracle() {
  Outcome out;
  const BaseField one = base_field({Rat(1)});
  const CycleReport r1 = refine_cycle(one.field, one.cycle_seeds()[0]);
  out.require(std::abs(r1.exponent + 4 * kPi) < 1e-4, "base_field([1]) exponent " + str(r1.exponent));
  const BaseField two = base_field({Rat(1), Rat(4)});
  const auto seeds = two.cycle_seeds();
  const CycleReport inner = refine_cycle(two.field, {seeds[0][0] * 1.01, 0});
  const CycleReport outer = refine_cycle(two.field, {seeds[1][0] * 1.01, 0});
  out.require(std::abs(inner.exponent / (-12 * kPi) - 1) < 1e-4, "inner exponent " + str(inner.exponent));
  out.require(std::abs(outer.exponent / (48 * kPi) - 1) < 1e-4, "outer exponent " + str(outer.exponent));
  const auto found = count_cycles(two.field, {-3, 3, -3, 3});
  out.require(found.size() == 2, "count_cycles found " + str(found.size()));
  out.detail = out.ok ? "exponents " + str(r1.exponent) + ", " + str(inner.exponent) + ", " + str(outer.exponent) +
                            "; 2 cycles counted"
                      : out.detail;
  return out;
}

Outcome harnack_counts() {
  Outcome out;
  std::string counts;
  for (int m = 2; m <= 4; ++m) {
    const auto a = trace_ovals(harnack_curve(m), harnack_region(m), 256).size();
    const auto b = trace_ovals(harnack_curve(m), harnack_region(m), 512).size();
    out.require(static_cast<long>(a) == har(m), "degree " + str(m) + " traced " + str(a));
    out.require(a == b, "degree " + str(m) + " unstable under grid doubling");
    counts += (counts.empty() ? "" : ", ") + str(a);
  }
  out.detail = out.ok ? "oval counts " + counts : out.detail;
  return out;
}

bool reports_ok(const std::vector<CycleReport>& rs, Outcome& out) {
  for (const auto& r : rs) {
    out.require(r.hyperbolic && std::abs(r.exponent) > 1e-6, "non-hyperbolic cycle");
    out.require(r.closure_error < 1e-8, "closure error " + str(r.closure_error));
  }
  return out.ok;
}

Outcome composition_instance() {
  Outcome out;
  const Poly c = P("x^2+y^2-1");
  const ChristopherResult y = christopher(c, LinearPoly::from_poly(P("y-2")), Rat(0), Rat(1), {-2, 2, -2, 2});
  const BaseField base = relocate(base_field({Rat(1)}), Rat(5), Rat(0), rat(1, 2));
  const CompositionResult res = epsilon_search(c, base, y.certificate, {-2, 6, -2, 2});
  out.require(res.oval_reports.size() == 1, "oval cycles " + str(res.oval_reports.size()));
  out.require(res.base_reports.size() == 1, "persisted cycles " + str(res.base_reports.size()));
  reports_ok(res.oval_reports, out);
  reports_ok(res.base_reports, out);
  out.require(divides(c, res.z.p - res.epsilon * y.field.p) && divides(c, res.z.q - res.epsilon * y.field.q),
              "restriction identity fails");
  out.detail = out.ok ? "eps " + res.epsilon.get_str() + ", 2 hyperbolic cycles, restriction identity exact"
                      : out.detail;
  return out;
}

Outcome kolmogorov_instance() {
  Outcome out;
  BuilderInput in;
  in.square_radii = {Rat(1)};
  in.cx = Rat(3);
  in.cy = Rat(3);
  in.scale = rat(1, 2);
  const CompositionResult res = build_kolmogorov(in);
  out.require(res.z.degree() == 5, "degree " + str(res.z.degree()));
  out.require(res.reduced && res.z.p == P("x") * res.reduced->p && res.z.q == P("y") * res.reduced->q,
              "not of the form (x p, y q)");
  int inside = 0;
  for (const auto& r : res.base_reports) {
    double mx = INFINITY, my = INFINITY;
    for (const auto& p : r.orbit) {
      mx = std::min(mx, p[0]);
      my = std::min(my, p[1]);
    }
    if (r.hyperbolic && mx > 0 && my > 0) ++inside;
  }
  out.require(inside >= 1, "no hyperbolic cycle in the open first quadrant");
  out.detail = out.ok ? "eps " + res.epsilon.get_str() + ", degree 5, " + str(inside) + " cycle(s) in quadrant"
                      : out.detail;
  return out;
}

Outcome game_instance() {
  Outcome out;
  BuilderInput in;
  in.square_radii = {Rat(1)};
  in.cx = rat(1, 2);
  in.cy = rat(1, 2);
  in.scale = rat(1, 8);
  const CompositionResult res = build_game(in);
  out.require(divides(P("x^2-x"), res.z.p) && divides(P("y^2-y"), res.z.q), "components not divisible");
  int inside = 0;
  for (const auto& r : res.base_reports) {
    bool in_square = r.hyperbolic;
    for (const auto& p : r.orbit) in_square = in_square && p[0] > 0 && p[0] < 1 && p[1] > 0 && p[1] < 1;
    if (in_square) ++inside;
  }
  out.require(inside >= 1, "no hyperbolic cycle in the open unit square");
  out.detail = out.ok ? "eps " + res.epsilon.get_str() + ", degree " + str(res.z.degree()) + ", " + str(inside) +
                            " cycle(s) in square"
                      : out.detail;
  return out;
}

Outcome tables() {
  Outcome out;
  const std::vector<std::pair<BoundsFamily, std::vector<std::pair<int, long>>>> expected{
      {BoundsFamily::Hilbert, {{2, 4}, {3, 13}, {4, 28}, {5, 37}, {6, 53}, {7, 74}, {8, 96}, {9, 120}, {10, 142}}},
      {BoundsFamily::Kolmogorov, {{1, 0}, {2, 0}, {3, 6}, {4, 13}, {5, 22}, {6, 28}, {7, 37}, {8, 53}}},
      {BoundsFamily::Square, {{2, 0}, {3, 1}, {4, 5}, {5, 5}, {6, 5}, {7, 13}, {8, 28}, {9, 37}, {10, 53}}}};
  int checked = 0;
  for (const auto& [fam, rows] : expected) {
    for (const auto& [n, v] : rows) {
      out.require(known_lower_bound(fam, n).value == v, std::string(family_name(fam)) + " n=" + str(n));
      ++checked;
    }
  }
  out.require(recurrent_bound(2, 4) == 8, "recurrent_bound(2,4)");
  out.require(hc_bound(2, P("x^2+y^2-1"), {-2, 2, -2, 2}).value == 5, "hc_bound(2, circle)");
  out.detail = out.ok ? str(checked) + " entries verbatim" : out.detail;
  return out;
}

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "'" + cli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string text;
  std::array<char, 4096> buf{};
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) text.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

Outcome error_paths(const std::string& cli) {
  Outcome out;
  struct Case {
    const char* args;
    const char* error;
    int exit_code;
  };
  const std::vector<Case> cases{
      {"christopher --curve 'x^4+2x^2y^2+y^4-2x^2-2y^2+1' --line 'y-2'", "degenerate-curve", 2},
      {"christopher --curve 'x^2-y^2' --line 'x-y'", "dividing-line", 2},
      {"christopher --curve 'x^2+y^2-1' --line 'x-2' --alpha 0 --beta 1", "degenerate-parameters", 2},
      {"compose --curve 'x^2+y^2-1' --radii 1 --center 0,0 --scale 1", "relocation-needed", 2},
      {"harnack --degree 5", "unsupported-degree", 1},
  };
  for (const auto& c : cases) {
    const CliRun r = run_cli(cli, c.args);
    const std::string tag = "\"error\":\"" + std::string(c.error) + "\"";
    out.require(r.exit_code == c.exit_code, std::string(c.error) + ": exit " + str(r.exit_code));
    out.require(r.out.find(tag) != std::string::npos, std::string(c.error) + ": output " + r.out);
  }
  out.detail = out.ok ? str(cases.size()) + " named errors with contracted exit codes" : out.detail;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s PATH_TO_CLI\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"cofactor exactness", 10, cofactor_exactness},
      {"green identity", 5, green_identity},
      {"polar reduction oracle", 20, polar_oracle},
      {"harnack counts", 30, harnack_counts},
      {"composition desk instance", 60, composition_instance},
      {"kolmogorov desk instance", 60, kolmogorov_instance},
      {"game desk instance", 90, game_instance},
      {"tables", 1, tables},
      {"error paths", 10, [&] { return error_paths(cli); }},
  };
  int failures = 0;
  int k = 0;
  for (const auto& c : criteria) {
    ++k;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs >= c.budget_s) {
      o.ok = false;
      o.detail = "over budget: " + o.detail;
    }
    if (!o.ok) ++failures;
    std::printf("%s %d %s (%.3f s of %.0f s): %s\n", o.ok ? "PASS" : "FAIL", k, c.name, secs, c.budget_s,
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
