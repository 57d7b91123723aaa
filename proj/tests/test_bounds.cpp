#include <functional>
#include <utility>
#include <vector>

#include "doctest.h"
#include "limcyc/bounds.hpp"
#include "limcyc/error.hpp"

using namespace limcyc;

namespace {

using Table = std::vector<std::pair<int, long>>;

const Table kHilbert{{2, 4}, {3, 13}, {4, 28}, {5, 37}, {6, 53}, {7, 74}, {8, 96}, {9, 120}, {10, 142}};
const Table kKolmogorov{{1, 0}, {2, 0}, {3, 6}, {4, 13}, {5, 22}, {6, 28}, {7, 37}, {8, 53}};
const Table kSquare{{2, 0}, {3, 1}, {4, 5}, {5, 5}, {6, 5}, {7, 13}, {8, 28}, {9, 37}, {10, 53}};

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("har formula") {
  // (m-1)(m-2)/2 + [1 + (-1)^m]/2, evaluated independently.
  for (long m = 1; m <= 12; ++m) {
    const long expected = (m - 1) * (m - 2) / 2 + (m % 2 == 0 ? 1 : 0);
    CHECK(har(m) == expected);
  }
  CHECK(har(5) == 6);
  CHECK(code_of([] { har(0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("harnack catalog") {
  CHECK(harnack_curve(1) == parse_poly("x"));
  CHECK(harnack_curve(2) == parse_poly("x^2+y^2-1"));
  CHECK(harnack_curve(3) == parse_poly("y^2-x^3+3x^2-2x"));
  CHECK(harnack_curve(4).degree() == 4);
  CHECK(code_of([] { harnack_curve(5); }) == ErrorCode::UnsupportedDegree);
  CHECK(code_of([] { harnack_curve(0); }) == ErrorCode::UnsupportedDegree);
}

TEST_CASE("tables are reproduced verbatim") {
  for (const auto& [table, fam] : {std::pair{&kHilbert, BoundsFamily::Hilbert},
                                   std::pair{&kKolmogorov, BoundsFamily::Kolmogorov},
                                   std::pair{&kSquare, BoundsFamily::Square}}) {
    long prev = -1;
    for (const auto& [n, v] : *table) {
      const BoundsEntry e = known_lower_bound(fam, n);
      CHECK(e.value == v);
      CHECK(e.n == n);
      CHECK(e.family == fam);
      CHECK(e.value >= prev);
      prev = e.value;
    }
  }
  CHECK(known_lower_bound(BoundsFamily::Kolmogorov, 1).exactness == Exactness::Exact);
  CHECK(known_lower_bound(BoundsFamily::Kolmogorov, 2).exactness == Exactness::Exact);
  CHECK(known_lower_bound(BoundsFamily::Kolmogorov, 3).exactness == Exactness::LowerBound);
  CHECK(known_lower_bound(BoundsFamily::Square, 3).exactness == Exactness::Exact);
  CHECK(known_lower_bound(BoundsFamily::Hilbert, 2).exactness == Exactness::LowerBound);
  CHECK(code_of([] { known_lower_bound(BoundsFamily::Hilbert, 11); }) == ErrorCode::OutOfTable);
  CHECK(code_of([] { known_lower_bound(BoundsFamily::Hilbert, 1); }) == ErrorCode::OutOfTable);
  CHECK(code_of([] { known_lower_bound(BoundsFamily::Kolmogorov, 9); }) == ErrorCode::OutOfTable);
}

TEST_CASE("family names") {
  CHECK(parse_family("hilbert") == BoundsFamily::Hilbert);
  CHECK(parse_family("square") == BoundsFamily::Square);
  CHECK(std::string(family_name(BoundsFamily::Kolmogorov)) == "kolmogorov");
  CHECK(std::string(exactness_name(Exactness::LowerBound)) == "lower_bound");
  CHECK(code_of([] { parse_family("nope"); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("derived bounds") {
  CHECK(recurrent_bound(2, 4) == 8);
  CHECK(recurrent_bound(3, 1) == 13);
  CHECK(recurrent_bound(4, 2) == 29);
  CHECK(code_of([] { recurrent_bound(11, 1); }) == ErrorCode::OutOfTable);

  const HcBound circle = hc_bound(2, parse_poly("x^2+y^2-1"), {-2, 2, -2, 2});
  CHECK(circle.value == 5);
  CHECK(circle.ovals == 1);
  CHECK(circle.base_n + circle.curve_degree == 4);
  CHECK(hc_bound(2, harnack_curve(4), harnack_region(4)).value == 8);
  CHECK(hc_bound(3, parse_poly("xy"), {-2, 2, -2, 2}).value == 13);
}
