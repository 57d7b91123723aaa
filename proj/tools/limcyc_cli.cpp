// Command-line front end over the C API. Each invocation prints one JSON
// document (or CSV/SVG text) on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 usage or input error, 2 verification negative,
// 3 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "limcyc/limcyc.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNegative = 2;
constexpr int kExitNumerical = 3;

int exit_code(lcy_status s) {
  switch (s) {
    case LCY_OK:
      return kExitOk;
    case LCY_ERR_PARSE:
    case LCY_ERR_INVALID_ARGUMENT:
    case LCY_ERR_UNSUPPORTED_DEGREE:
    case LCY_ERR_OUT_OF_TABLE:
    case LCY_ERR_DIVISION_BY_ZERO:
    case LCY_ERR_IO:
      return kExitUsage;
    case LCY_ERR_DEGENERATE_CURVE:
    case LCY_ERR_DIVIDING_LINE:
    case LCY_ERR_DEGENERATE_PARAMETERS:
    case LCY_ERR_LINE_MEETS_OVAL:
    case LCY_ERR_INVALID_LINE:
    case LCY_ERR_AMBIGUOUS_POINT:
    case LCY_ERR_NOT_INVARIANT:
    case LCY_ERR_RELOCATION_NEEDED:
      return kExitNegative;
    case LCY_ERR_RESOLUTION:
    case LCY_ERR_INTEGRATION:
    case LCY_ERR_NO_CYCLE:
    case LCY_ERR_NON_CONVERGENCE:
    case LCY_ERR_SEARCH_FAILURE:
    case LCY_ERR_INTERNAL:
      return kExitNumerical;
  }
  return kExitNumerical;
}

// Raised for a failed library call; carries the status.
struct Failure {
  lcy_status status;
  std::string message;
};

void check(lcy_status s) {
  if (s != LCY_OK) throw Failure{s, lcy_last_error()};
}

struct PolyDeleter {
  void operator()(lcy_poly* p) const { lcy_poly_free(p); }
};
struct FieldDeleter {
  void operator()(lcy_field* f) const { lcy_field_free(f); }
};
using PolyPtr = std::unique_ptr<lcy_poly, PolyDeleter>;
using FieldPtr = std::unique_ptr<lcy_field, FieldDeleter>;

PolyPtr poly(const std::string& text) {
  lcy_poly* p = nullptr;
  check(lcy_poly_parse(text.c_str(), &p));
  return PolyPtr(p);
}

PolyPtr optional_poly(const std::optional<std::string>& text) { return text ? poly(*text) : PolyPtr(); }

FieldPtr field(const std::string& p, const std::string& q) {
  const PolyPtr pp = poly(p);
  const PolyPtr qq = poly(q);
  lcy_field* f = nullptr;
  check(lcy_field_new(pp.get(), qq.get(), &f));
  return FieldPtr(f);
}

std::string take(char* s) {
  std::string out(s);
  lcy_string_free(s);
  return out;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_number(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  try {
    if (slash == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } else {
      const std::string num = s.substr(0, slash);
      const std::string den = s.substr(slash + 1);
      std::size_t u1 = 0, u2 = 0;
      const double a = std::stod(num, &u1);
      const double b = std::stod(den, &u2);
      if (u1 == num.size() && u2 == den.size() && b != 0) return a / b;
    }
  } catch (const std::exception&) {
  }
  throw Failure{LCY_ERR_INVALID_ARGUMENT, "not a number: '" + s + "'"};
}

lcy_region parse_region(const std::string& text) {
  const auto parts = split(text);
  if (parts.size() != 4) throw Failure{LCY_ERR_INVALID_ARGUMENT, "--region expects xmin,xmax,ymin,ymax"};
  return {parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2]), parse_number(parts[3])};
}

struct Shared {
  std::optional<std::string> curve, px, qy, line, alpha, beta, region, out;
  std::string format = "json";
  int grid = 0;
};

struct Builder {
  std::string radii = "1";
  std::string center = "0,0";
  std::string scale = "1";
  std::string epsilon = "auto";
};

// Owns the strings a lcy_build_params points into.
struct BuildParams {
  std::vector<std::string> radii;
  std::vector<const char*> radii_ptrs;
  std::string cx, cy, scale;
  PolyPtr line;
  lcy_build_params params{};

  BuildParams(const Builder& b, const Shared& s) : radii(split(b.radii)) {
    const auto c = split(b.center);
    if (c.size() != 2) throw Failure{LCY_ERR_INVALID_ARGUMENT, "--center expects cx,cy"};
    cx = c[0];
    cy = c[1];
    scale = b.scale;
    for (const auto& r : radii) radii_ptrs.push_back(r.c_str());
    line = optional_poly(s.line);
    params.square_radii = radii_ptrs.data();
    params.radii_count = radii_ptrs.size();
    params.center_x = cx.c_str();
    params.center_y = cy.c_str();
    params.scale = scale.c_str();
    params.line = line.get();
    params.alpha = s.alpha ? s.alpha->c_str() : nullptr;
    params.beta = s.beta ? s.beta->c_str() : nullptr;
    params.grid = s.grid;
  }
};

const std::string& need(const std::optional<std::string>& v, const char* flag) {
  if (!v) throw Failure{LCY_ERR_INVALID_ARGUMENT, std::string("missing required flag ") + flag};
  return *v;
}

void emit(const std::string& text, const Shared& s) {
  if (s.out) {
    std::ofstream f(*s.out, std::ios::binary);
    if (!f || !(f << text << '\n') || !f.flush()) throw Failure{LCY_ERR_IO, "cannot write " + *s.out};
    return;
  }
  std::cout << text << '\n';
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (static_cast<unsigned char>(c) < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit cycles on invariant algebraic curves: constructions and checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Shared s;
  Builder b;
  int degree = 0, n = 0, m = 0, seeds = 64, lattice = 0;
  std::optional<std::string> family, seed, overlay;

  app.add_option("--curve", s.curve, "Curve C (text or JSON records)");
  app.add_option("--px,--p", s.px, "First field component");
  app.add_option("--qy-field,--q", s.qy, "Second field component");
  app.add_option("--line", s.line, "Degree-one polynomial D");
  app.add_option("--alpha", s.alpha, "Rational alpha");
  app.add_option("--beta", s.beta, "Rational beta");
  app.add_option("--region", s.region, "xmin,xmax,ymin,ymax");
  app.add_option("--grid", s.grid, "Grid resolution (portrait: seed lattice)")->check(CLI::NonNegativeNumber);
  app.add_option("--out", s.out, "Write output to PATH");
  app.add_option("--format", s.format, "json|csv|svg")->check(CLI::IsMember({"json", "csv", "svg"}));

  auto* cofactor = app.add_subcommand("cofactor", "Cofactor of C for the field, or the division remainder");
  auto* christopher = app.add_subcommand("christopher", "Field with every oval of C as a hyperbolic limit cycle");
  auto* ovals = app.add_subcommand("ovals", "Trace the ovals of C = 0");
  auto* singular = app.add_subcommand("singular", "Singular points of C = 0");
  auto* cycles = app.add_subcommand("cycles", "Detect limit cycles (or refine one with --seed)");
  cycles->add_option("--seeds", seeds, "Number of seeds")->check(CLI::PositiveNumber);
  cycles->add_option("--seed", seed, "Refine the cycle through x,y");
  auto* compose = app.add_subcommand("compose", "Compose a relocated base field with the Christopher field of C");
  auto* kolmogorov = app.add_subcommand("kolmogorov", "Kolmogorov system with cycles in the first quadrant");
  auto* game = app.add_subcommand("game", "System with cycles in the open unit square");
  for (auto* sub : {compose, kolmogorov, game}) {
    sub->add_option("--radii", b.radii, "Squared radii of the base cycles, comma separated");
    sub->add_option("--center", b.center, "cx,cy");
    sub->add_option("--scale", b.scale, "Positive rational scale");
  }
  compose->add_option("--epsilon", b.epsilon, "auto or a positive rational");
  auto* harnack = app.add_subcommand("harnack", "Catalog curve of degree m with Har(m) ovals");
  harnack->add_option("--degree", degree, "Degree m")->required();
  auto* harcmd = app.add_subcommand("har", "Har(m)");
  harcmd->add_option("--m", m, "m")->required();
  auto* bounds = app.add_subcommand("bounds", "Tabulated lower bounds");
  bounds->add_option("--family", family, "hilbert|kolmogorov|square")->required();
  bounds->add_option("--n", n, "Degree")->required();
  auto* recurrent = app.add_subcommand("recurrent", "Lower bound H(n) + Har(m) for H(n+m)");
  recurrent->add_option("--n", n, "n")->required();
  recurrent->add_option("--m", m, "m")->required();
  auto* hcbound = app.add_subcommand("hcbound", "Lower bound H(n) + O(C)");
  hcbound->add_option("--n", n, "n")->required();
  auto* flux = app.add_subcommand("flux", "Green flux over each oval against the divergence exponent");
  auto* portrait = app.add_subcommand("portrait", "Phase portrait as CSV or SVG");
  portrait->add_option("--overlay-curve", overlay, "Curve drawn over the portrait");
  portrait->add_option("--lattice", lattice, "Seeds per side")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const bool text_output = portrait->parsed();
    if (!text_output && s.format != "json") {
      throw Failure{LCY_ERR_INVALID_ARGUMENT, "--format " + s.format + " is only available for portrait"};
    }
    std::optional<lcy_region> region;
    if (s.region) region = parse_region(*s.region);
    const lcy_region* reg = region ? &*region : nullptr;
    char* out = nullptr;
    int code = kExitOk;

    if (cofactor->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      const FieldPtr f = field(need(s.px, "--px"), need(s.qy, "--qy-field"));
      int invariant = 0;
      check(lcy_cofactor(c.get(), f.get(), &invariant, &out));
      if (!invariant) code = kExitNegative;
    } else if (christopher->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      const PolyPtr d = optional_poly(s.line);
      check(lcy_christopher(c.get(), d.get(), s.alpha ? s.alpha->c_str() : nullptr,
                            s.beta ? s.beta->c_str() : nullptr, reg, s.grid, &out));
    } else if (ovals->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      check(lcy_ovals(c.get(), reg, s.grid, &out));
    } else if (singular->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      check(lcy_singular(c.get(), reg, s.grid, &out));
    } else if (cycles->parsed()) {
      const FieldPtr f = field(need(s.px, "--px"), need(s.qy, "--qy-field"));
      if (seed) {
        const auto xy = split(*seed);
        if (xy.size() != 2) throw Failure{LCY_ERR_INVALID_ARGUMENT, "--seed expects x,y"};
        check(lcy_refine(f.get(), parse_number(xy[0]), parse_number(xy[1]), &out));
      } else {
        check(lcy_cycles(f.get(), reg, seeds, &out));
      }
    } else if (compose->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      BuildParams p(b, s);
      check(lcy_compose(c.get(), &p.params, b.epsilon.c_str(), reg, &out));
    } else if (kolmogorov->parsed()) {
      BuildParams p(b, s);
      check(lcy_kolmogorov(&p.params, &out));
    } else if (game->parsed()) {
      BuildParams p(b, s);
      check(lcy_game(&p.params, &out));
    } else if (harnack->parsed()) {
      check(lcy_harnack(degree, s.grid, &out));
    } else if (harcmd->parsed()) {
      long v = 0;
      check(lcy_har(m, &v));
      emit("{\"m\":" + std::to_string(m) + ",\"har\":" + std::to_string(v) + "}", s);
      return kExitOk;
    } else if (bounds->parsed()) {
      lcy_bounds_family fam;
      if (*family == "hilbert") {
        fam = LCY_HILBERT;
      } else if (*family == "kolmogorov") {
        fam = LCY_KOLMOGOROV;
      } else if (*family == "square") {
        fam = LCY_SQUARE;
      } else {
        throw Failure{LCY_ERR_INVALID_ARGUMENT, "unknown family '" + *family + "'"};
      }
      check(lcy_bounds(fam, n, &out));
    } else if (recurrent->parsed()) {
      check(lcy_recurrent(n, m, &out));
    } else if (hcbound->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      check(lcy_hcbound(n, c.get(), reg, s.grid, &out));
    } else if (flux->parsed()) {
      const PolyPtr c = poly(need(s.curve, "--curve"));
      const PolyPtr d = poly(need(s.line, "--line"));
      check(lcy_flux(c.get(), d.get(), s.alpha ? s.alpha->c_str() : nullptr, s.beta ? s.beta->c_str() : nullptr,
                     reg, s.grid, &out));
    } else if (portrait->parsed()) {
      const FieldPtr f = field(need(s.px, "--px"), need(s.qy, "--qy-field"));
      const PolyPtr o = optional_poly(overlay ? overlay : std::optional<std::string>());
      const lcy_text_format fmt = s.format == "csv" ? LCY_FORMAT_CSV : LCY_FORMAT_SVG;
      check(lcy_portrait(f.get(), reg, lattice > 0 ? lattice : s.grid, o.get(), fmt, &out));
    }
    emit(take(out), s);
    return code;
  } catch (const Failure& f) {
    const char* name = lcy_status_name(f.status);
    std::cerr << "limcyc: " << name << ": " << f.message << '\n';
    std::cout << "{\"error\":\"" << name << "\",\"message\":\"" << json_escape(f.message) << "\"}\n";
    return exit_code(f.status);
  }
}
