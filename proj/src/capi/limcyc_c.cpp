#include "limcyc/limcyc.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "limcyc/bounds.hpp"
#include "limcyc/construct.hpp"
#include "limcyc/dynamics.hpp"
#include "limcyc/error.hpp"
#include "limcyc/geometry.hpp"
#include "limcyc/portrait.hpp"
#include "limcyc/quadrature.hpp"
#include "limcyc/serialize.hpp"

struct lcy_poly {
  limcyc::Poly value;
};

struct lcy_field {
  limcyc::VectorField value;
};

namespace {

using namespace limcyc;

thread_local std::string g_last_error;

lcy_status to_status(ErrorCode code) { return static_cast<lcy_status>(static_cast<int>(code)); }

// Runs `body`, translating exceptions into a status and the thread's last
// error message.
template <class F>
lcy_status guard(F&& body) {
  try {
    g_last_error.clear();
    body();
    return LCY_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return LCY_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return LCY_ERR_INTERNAL;
  }
}

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const Json& j, char** out) { *out = copy_out(dump(j)); }

void require(const void* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

Region region_or_default(const lcy_region* r) {
  Region out;
  if (r) out = {r->xmin, r->xmax, r->ymin, r->ymax};
  out.validate();
  return out;
}

int grid_or_default(int grid) { return grid > 0 ? grid : kDefaultGrid; }

Rat rat_or(const char* text, const Rat& fallback) { return text ? parse_rat(text) : fallback; }

LinearPoly line_of(const lcy_poly* p) { return LinearPoly::from_poly(p->value); }

BuilderInput builder_input(const lcy_build_params* params) {
  require(params, "params");
  BuilderInput in;
  if (params->radii_count > 0) require(params->square_radii, "square_radii");
  for (std::size_t i = 0; i < params->radii_count; ++i) {
    require(params->square_radii[i], "square radius");
    in.square_radii.push_back(parse_rat(params->square_radii[i]));
  }
  in.cx = rat_or(params->center_x, Rat(0));
  in.cy = rat_or(params->center_y, Rat(0));
  in.scale = rat_or(params->scale, Rat(1));
  if (params->line) in.line = line_of(params->line);
  if (params->alpha) in.alpha = parse_rat(params->alpha);
  if (params->beta) in.beta = parse_rat(params->beta);
  return in;
}

SearchOptions search_options(const lcy_build_params* params) {
  SearchOptions opts;
  opts.grid_n = grid_or_default(params->grid);
  return opts;
}

// (alpha, beta) from the arguments, defaulting as the builders do.
std::pair<Rat, Rat> parameters(const LinearPoly& d, const char* alpha, const char* beta) {
  if (!alpha && !beta) return default_parameters(d);
  return {rat_or(alpha, Rat(0)), rat_or(beta, Rat(0))};
}

}  // namespace

extern "C" {

const char* lcy_status_name(lcy_status status) {
  if (status == LCY_OK) return "ok";
  return error_name(static_cast<ErrorCode>(status));
}

const char* lcy_last_error(void) { return g_last_error.c_str(); }

const char* lcy_version(void) { return "0.1.0"; }

void lcy_string_free(char* s) { delete[] s; }

lcy_status lcy_poly_parse(const char* text, lcy_poly** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new lcy_poly{read_poly(text)};
  });
}

void lcy_poly_free(lcy_poly* p) { delete p; }

lcy_status lcy_poly_format(const lcy_poly* p, char** out) {
  return guard([&] {
    require(p, "poly");
    require(out, "out");
    *out = copy_out(format_poly(p->value));
  });
}

int lcy_poly_degree(const lcy_poly* p) { return p ? p->value.degree() : -1; }

lcy_status lcy_field_new(const lcy_poly* p, const lcy_poly* q, lcy_field** out) {
  return guard([&] {
    require(p, "p");
    require(q, "q");
    require(out, "out");
    VectorField f{p->value, q->value};
    f.validate();
    *out = new lcy_field{std::move(f)};
  });
}

void lcy_field_free(lcy_field* f) { delete f; }

lcy_status lcy_cofactor(const lcy_poly* curve, const lcy_field* field, int* invariant, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(field, "field");
    require(json, "json");
    const CofactorCheck chk = cofactor(curve->value, field->value);
    if (invariant) *invariant = chk.invariant ? 1 : 0;
    if (chk.invariant) {
      emit(Json{{"cofactor", to_json(chk.certificate->cofactor)}}, json);
    } else {
      emit(Json{{"invariant", false}, {"remainder", to_json(chk.remainder)}}, json);
    }
  });
}

lcy_status lcy_christopher(const lcy_poly* curve, const lcy_poly* line, const char* alpha, const char* beta,
                           const lcy_region* region, int grid, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(json, "json");
    const Region reg = region_or_default(region);
    const int g = grid_or_default(grid);
    LinearPoly d;
    if (line) {
      d = line_of(line);
    } else {
      if (curve->value.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
      d = default_line(curve->value, trace_ovals(curve->value, reg, g));
    }
    const auto [a, b] = parameters(d, alpha, beta);
    const ChristopherResult res = christopher(curve->value, d, a, b, reg, g);
    Json j = to_json(res);
    j["line"] = to_json(d.to_poly());
    j["alpha"] = to_json(a);
    j["beta"] = to_json(b);
    emit(j, json);
  });
}

lcy_status lcy_ovals(const lcy_poly* curve, const lcy_region* region, int grid, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(json, "json");
    const auto ovals = trace_ovals(curve->value, region_or_default(region), grid_or_default(grid));
    Json list = Json::array();
    for (const auto& o : ovals) list.push_back(to_json(o));
    emit(Json{{"count", ovals.size()}, {"ovals", list}}, json);
  });
}

lcy_status lcy_singular(const lcy_poly* curve, const lcy_region* region, int grid, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(json, "json");
    const auto pts = find_singular_points(curve->value, region_or_default(region), grid_or_default(grid));
    Json list = Json::array();
    for (const auto& s : pts) list.push_back(to_json(s));
    emit(Json{{"count", pts.size()}, {"singular_points", list}}, json);
  });
}

lcy_status lcy_cycles(const lcy_field* field, const lcy_region* region, int seed_count, char** json) {
  return guard([&] {
    require(field, "field");
    require(json, "json");
    if (seed_count <= 0) seed_count = 64;
    const auto cycles = count_cycles(field->value, region_or_default(region), seed_count);
    Json list = Json::array();
    for (const auto& c : cycles) list.push_back(to_json(c));
    emit(Json{{"count", cycles.size()}, {"cycles", list}}, json);
  });
}

lcy_status lcy_refine(const lcy_field* field, double x, double y, char** json) {
  return guard([&] {
    require(field, "field");
    require(json, "json");
    emit(to_json(refine_cycle(field->value, {x, y})), json);
  });
}

lcy_status lcy_compose(const lcy_poly* curve, const lcy_build_params* params, const char* epsilon,
                       const lcy_region* region, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(json, "json");
    const BuilderInput in = builder_input(params);
    const SearchOptions opts = search_options(params);
    const Region reg = region_or_default(region);
    const BaseField base = relocate(base_field(in.square_radii), in.cx, in.cy, in.scale);
    if (curve->value.is_constant()) throw Error(ErrorCode::InvalidArgument, "curve must be nonconstant");
    const LinearPoly d = in.line ? *in.line : default_line(curve->value, trace_ovals(curve->value, reg, opts.grid_n));
    std::pair<Rat, Rat> ab = default_parameters(d);
    if (in.alpha || in.beta) ab = {in.alpha.value_or(Rat(0)), in.beta.value_or(Rat(0))};
    const ChristopherResult y = christopher(curve->value, d, ab.first, ab.second, reg, opts.grid_n);
    const std::string eps = epsilon ? epsilon : "auto";
    const CompositionResult res = eps == "auto" ? epsilon_search(curve->value, base, y.certificate, reg, opts)
                                                : verify_composition(curve->value, base, y.certificate, reg,
                                                                     parse_rat(eps), opts);
    emit(to_json(res), json);
  });
}

lcy_status lcy_kolmogorov(const lcy_build_params* params, char** json) {
  return guard([&] {
    require(json, "json");
    emit(to_json(build_kolmogorov(builder_input(params), search_options(params))), json);
  });
}

lcy_status lcy_game(const lcy_build_params* params, char** json) {
  return guard([&] {
    require(json, "json");
    emit(to_json(build_game(builder_input(params), search_options(params))), json);
  });
}

lcy_status lcy_harnack(int degree, int grid, char** json) {
  return guard([&] {
    require(json, "json");
    const Poly c = harnack_curve(degree);
    const Region reg = harnack_region(degree);
    const auto ovals = trace_ovals(c, reg, grid_or_default(grid));
    emit(Json{{"degree", degree},
              {"curve", to_json(c)},
              {"har", har(degree)},
              {"oval_count", ovals.size()},
              {"region", to_json(reg)}},
         json);
  });
}

lcy_status lcy_har(long m, long* out) {
  return guard([&] {
    require(out, "out");
    *out = har(m);
  });
}

lcy_status lcy_bounds(lcy_bounds_family family, int n, char** json) {
  return guard([&] {
    require(json, "json");
    if (family < LCY_HILBERT || family > LCY_SQUARE) throw Error(ErrorCode::InvalidArgument, "unknown family");
    emit(to_json(known_lower_bound(static_cast<BoundsFamily>(family), n)), json);
  });
}

lcy_status lcy_recurrent(int n, int m, char** json) {
  return guard([&] {
    require(json, "json");
    const long v = recurrent_bound(n, m);
    emit(Json{{"n", n}, {"m", m}, {"degree", n + m}, {"value", v}, {"exactness", "lower_bound"}}, json);
  });
}

lcy_status lcy_hcbound(int n, const lcy_poly* curve, const lcy_region* region, int grid, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(json, "json");
    const HcBound b = hc_bound(n, curve->value, region_or_default(region), grid_or_default(grid));
    emit(Json{{"n", b.base_n},
              {"curve_degree", b.curve_degree},
              {"degree", b.base_n + b.curve_degree},
              {"ovals", b.ovals},
              {"value", b.value},
              {"exactness", "lower_bound"}},
         json);
  });
}

lcy_status lcy_flux(const lcy_poly* curve, const lcy_poly* line, const char* alpha, const char* beta,
                    const lcy_region* region, int grid, char** json) {
  return guard([&] {
    require(curve, "curve");
    require(line, "line");
    require(json, "json");
    const Region reg = region_or_default(region);
    const LinearPoly d = line_of(line);
    const auto [a, b] = parameters(d, alpha, beta);
    const ChristopherResult ch = christopher(curve->value, d, a, b, reg, grid_or_default(grid));
    Json list = Json::array();
    for (const auto& o : ch.ovals) {
      const double flux = green_flux(o, d, a, b, 1e-10, &curve->value);
      const CycleReport rep = invariant_oval_cycle(ch.field, curve->value, o.vertices.front());
      const double rel = std::abs(std::abs(rep.exponent) - std::abs(flux)) / std::max(std::abs(flux), 1e-300);
      list.push_back(Json{{"flux", flux},
                          {"exponent", rep.exponent},
                          {"relative_difference", rel},
                          {"period", rep.period},
                          {"hyperbolic", rep.hyperbolic}});
    }
    emit(Json{{"field", to_json(ch.field)}, {"count", ch.ovals.size()}, {"ovals", list}}, json);
  });
}

lcy_status lcy_portrait(const lcy_field* field, const lcy_region* region, int lattice, const lcy_poly* overlay,
                        lcy_text_format format, char** out) {
  return guard([&] {
    require(field, "field");
    require(out, "out");
    if (format != LCY_FORMAT_CSV && format != LCY_FORMAT_SVG) {
      throw Error(ErrorCode::InvalidArgument, "portrait format must be csv or svg");
    }
    PortraitOptions opts;
    if (lattice > 0) opts.lattice = lattice;
    std::optional<Poly> curve;
    if (overlay) curve = overlay->value;
    const Portrait p = compute_portrait(field->value, region_or_default(region), curve, opts);
    *out = copy_out(format == LCY_FORMAT_CSV ? portrait_csv(p) : portrait_svg(p));
  });
}

}  // extern "C"
