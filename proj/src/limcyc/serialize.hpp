#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "limcyc/bounds.hpp"
#include "limcyc/construct.hpp"
#include "limcyc/dynamics.hpp"
#include "limcyc/geometry.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

/// Insertion-ordered, so output field order is fixed.
using Json = nlohmann::ordered_json;

/// Compact text with every double printed to 17 significant digits;
/// non-finite values become null.
std::string dump(const Json& j);

/// Accepts polynomial text or a JSON list of [i, j, "num/den"] records.
/// Throws ParseError on malformed input.
Poly read_poly(std::string_view text);
Poly poly_from_json(const Json& j);
Json poly_records(const Poly& p);

Json to_json(const Rat& r);
Json to_json(const Poly& p);
Json to_json(const Point& p);
Json to_json(const Region& r);
Json to_json(const VectorField& f);
Json to_json(const Oval& o);
Json to_json(const SingularPoint& s);
Json to_json(const CycleReport& r);
Json to_json(const InvarianceCertificate& c);
Json to_json(const ChristopherResult& r);
Json to_json(const CompositionResult& r);
Json to_json(const BoundsEntry& e);

/// Columns t,x,y at the accepted integration steps.
std::string trajectory_csv(const Trajectory& tr);

/// printf "%.17g", or "null" when not finite.
std::string format_double(double v);

}  // namespace limcyc
