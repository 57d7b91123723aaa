#include "limcyc/serialize.hpp"

#include <cmath>
#include <cstdio>

#include "limcyc/error.hpp"

namespace limcyc {

namespace {

void write(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      break;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      break;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      break;
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    case Json::value_t::string:
      out += j.dump();
      break;
    case Json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        write(v, out);
      }
      out += ']';
      break;
    }
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(k).dump();
        out += ':';
        write(v, out);
      }
      out += '}';
      break;
    }
    default:
      throw Error(ErrorCode::Internal, "unsupported JSON value");
  }
}

Json points(const std::vector<Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

template <class T>
Json list(const std::vector<T>& items) {
  Json a = Json::array();
  for (const auto& v : items) a.push_back(to_json(v));
  return a;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j) {
  std::string out;
  write(j, out);
  return out;
}

Poly poly_from_json(const Json& j) {
  if (j.is_string()) return parse_poly(j.get<std::string>());
  if (!j.is_array()) throw ParseError(0, "expected polynomial text or a list of [i, j, \"num/den\"] records");
  Poly p;
  std::size_t k = 0;
  for (const auto& rec : j) {
    if (!rec.is_array() || rec.size() != 3 || !rec[0].is_number_integer() || !rec[1].is_number_integer()) {
      throw ParseError(k, "record must be [i, j, coefficient]");
    }
    const auto i = rec[0].get<std::int64_t>();
    const auto e = rec[1].get<std::int64_t>();
    if (i < 0 || e < 0 || i > 1000 || e > 1000) throw ParseError(k, "exponent out of range");
    Rat c;
    if (rec[2].is_string()) {
      c = parse_rat(rec[2].get<std::string>());
    } else if (rec[2].is_number_integer()) {
      c = Rat(static_cast<long>(rec[2].get<std::int64_t>()));
    } else {
      throw ParseError(k, "coefficient must be \"num/den\" or an integer");
    }
    p.add_term({static_cast<int>(i), static_cast<int>(e)}, c);
    ++k;
  }
  return p;
}

Poly read_poly(std::string_view text) {
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start != std::string_view::npos && text[start] == '[') {
    Json j = Json::parse(text.begin(), text.end(), nullptr, false);
    if (j.is_discarded()) throw ParseError(start, "malformed JSON record list");
    return poly_from_json(j);
  }
  return parse_poly(text);
}

Json poly_records(const Poly& p) {
  Json a = Json::array();
  for (const auto& [m, c] : p.terms()) a.push_back(Json::array({m.i, m.j, format_rat(c)}));
  return a;
}

Json to_json(const Rat& r) { return format_rat(r); }
Json to_json(const Poly& p) { return format_poly(p); }
Json to_json(const Point& p) { return Json::array({p[0], p[1]}); }

Json to_json(const Region& r) {
  return Json{{"xmin", r.xmin}, {"xmax", r.xmax}, {"ymin", r.ymin}, {"ymax", r.ymax}};
}

Json to_json(const VectorField& f) { return Json{{"p", to_json(f.p)}, {"q", to_json(f.q)}}; }

Json to_json(const Oval& o) {
  return Json{{"vertices", points(o.vertices)},
              {"orientation", o.orientation == Orientation::Ccw ? "ccw" : "cw"},
              {"max_residual", o.max_residual},
              {"bbox", to_json(o.bbox)}};
}

Json to_json(const SingularPoint& s) {
  return Json{{"x", s.location[0]},
              {"y", s.location[1]},
              {"residual_c", s.residual_c},
              {"residual_cx", s.residual_cx},
              {"residual_cy", s.residual_cy}};
}

Json to_json(const CycleReport& r) {
  Json w = Json::array();
  for (const auto& s : r.warnings) w.push_back(s);
  return Json{{"anchor", to_json(r.anchor)},
              {"period", r.period},
              {"exponent", r.exponent},
              {"exponent_error", r.exponent_error},
              {"multiplier", r.multiplier},
              {"return_derivative", r.return_derivative},
              {"closure_error", r.closure_error},
              {"stable", r.stable},
              {"hyperbolic", r.hyperbolic},
              {"winding_ambiguous", r.winding_ambiguous},
              {"warnings", w},
              {"orbit", points(r.orbit)}};
}

Json to_json(const InvarianceCertificate& c) {
  return Json{{"curve", to_json(c.curve)}, {"field", to_json(c.field)}, {"cofactor", to_json(c.cofactor)}};
}

Json to_json(const ChristopherResult& r) {
  return Json{{"field", to_json(r.field)},
              {"certificate", to_json(r.certificate)},
              {"degree", r.field.degree()},
              {"ovals", list(r.ovals)}};
}

Json to_json(const CompositionResult& r) {
  Json w = Json::array();
  for (const auto& s : r.warnings) w.push_back(s);
  Json j{{"z", to_json(r.z)},
         {"epsilon", to_json(r.epsilon)},
         {"certificate", Json{{"curve", to_json(r.certificate.curve)}, {"cofactor", to_json(r.certificate.cofactor)}}},
         {"base_reports", list(r.base_reports)},
         {"oval_reports", list(r.oval_reports)},
         {"degree", Json{{"n", r.n}, {"c", r.c}, {"total", r.total_degree()}}},
         {"restriction_identity", r.restriction_identity},
         {"hyperbolic_cycles", r.base_reports.size() + r.oval_reports.size()},
         {"warnings", w}};
  if (r.reduced) j["reduced"] = to_json(*r.reduced);
  if (!r.line_certificates.empty()) {
    Json lines = Json::array();
    for (const auto& c : r.line_certificates) {
      lines.push_back(Json{{"line", to_json(c.curve)}, {"cofactor", to_json(c.cofactor)}});
    }
    j["line_certificates"] = lines;
  }
  return j;
}

Json to_json(const BoundsEntry& e) {
  return Json{{"family", family_name(e.family)},
              {"n", e.n},
              {"value", e.value},
              {"exactness", exactness_name(e.exactness)}};
}

std::string trajectory_csv(const Trajectory& tr) {
  std::string out = "t,x,y\n";
  for (const auto& s : tr.samples()) {
    out += format_double(s.t) + "," + format_double(s.point[0]) + "," + format_double(s.point[1]) + "\n";
  }
  return out;
}

}  // namespace limcyc
