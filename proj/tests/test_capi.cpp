#include <string>

#include "doctest.h"
#include "limcyc/limcyc.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  lcy_string_free(s);
  return out;
}

lcy_poly* parse(const char* text) {
  lcy_poly* p = nullptr;
  REQUIRE(lcy_poly_parse(text, &p) == LCY_OK);
  return p;
}

}  // namespace

TEST_CASE("status names") {
  CHECK(std::string(lcy_status_name(LCY_OK)) == "ok");
  CHECK(std::string(lcy_status_name(LCY_ERR_DEGENERATE_CURVE)) == "degenerate-curve");
  CHECK(std::string(lcy_status_name(LCY_ERR_RELOCATION_NEEDED)) == "relocation-needed");
  CHECK(std::string(lcy_version()).size() > 0);
}

TEST_CASE("polynomial handles") {
  lcy_poly* p = parse("x^2 + y^2 - 1");
  CHECK(lcy_poly_degree(p) == 2);
  char* text = nullptr;
  REQUIRE(lcy_poly_format(p, &text) == LCY_OK);
  CHECK(take(text) == "x^2+y^2-1");
  lcy_poly_free(p);

  lcy_poly* bad = nullptr;
  CHECK(lcy_poly_parse("x^", &bad) == LCY_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(lcy_last_error()).size() > 0);
  CHECK(lcy_poly_parse(nullptr, &bad) == LCY_ERR_INVALID_ARGUMENT);
}

TEST_CASE("cofactor through the C API") {
  lcy_poly* c = parse("x^2+y^2-1");
  lcy_poly* p = parse("-2y^2+4y");
  lcy_poly* q = parse("x^2+y^2-1+2xy-4x");
  lcy_field* f = nullptr;
  REQUIRE(lcy_field_new(p, q, &f) == LCY_OK);
  int invariant = -1;
  char* json = nullptr;
  REQUIRE(lcy_cofactor(c, f, &invariant, &json) == LCY_OK);
  CHECK(invariant == 1);
  CHECK(take(json) == R"({"cofactor":"2y"})");
  lcy_field_free(f);
  lcy_poly_free(q);
  lcy_poly_free(p);
  lcy_poly_free(c);
}

TEST_CASE("christopher errors carry their status") {
  lcy_poly* c = parse("x^4+2x^2y^2+y^4-2x^2-2y^2+1");
  lcy_poly* d = parse("y-2");
  char* json = nullptr;
  CHECK(lcy_christopher(c, d, "0", "1", nullptr, 0, &json) == LCY_ERR_DEGENERATE_CURVE);
  CHECK(json == nullptr);
  CHECK(std::string(lcy_last_error()).find("gcd") != std::string::npos);
  lcy_poly_free(d);
  lcy_poly_free(c);

  lcy_poly* circle = parse("x^2+y^2-1");
  lcy_poly* vertical = parse("x-2");
  CHECK(lcy_christopher(circle, vertical, "0", "1", nullptr, 0, &json) == LCY_ERR_DEGENERATE_PARAMETERS);
  CHECK(lcy_christopher(circle, vertical, "1", "zz", nullptr, 0, &json) == LCY_ERR_PARSE);
  REQUIRE(lcy_christopher(circle, vertical, nullptr, nullptr, nullptr, 0, &json) == LCY_OK);
  CHECK(take(json).find("\"ovals\"") != std::string::npos);
  lcy_poly_free(vertical);
  lcy_poly_free(circle);
}

TEST_CASE("bounds through the C API") {
  long v = 0;
  REQUIRE(lcy_har(4, &v) == LCY_OK);
  CHECK(v == 4);
  CHECK(lcy_har(0, &v) == LCY_ERR_INVALID_ARGUMENT);
  char* json = nullptr;
  REQUIRE(lcy_bounds(LCY_KOLMOGOROV, 5, &json) == LCY_OK);
  CHECK(take(json) == R"({"family":"kolmogorov","n":5,"value":22,"exactness":"lower_bound"})");
  CHECK(lcy_bounds(LCY_HILBERT, 11, &json) == LCY_ERR_OUT_OF_TABLE);
  CHECK(lcy_harnack(5, 0, &json) == LCY_ERR_UNSUPPORTED_DEGREE);
}

TEST_CASE("builders through the C API") {
  const char* radii[] = {"1"};
  lcy_build_params params{radii, 1, "2/5", "2/5", "1/2", nullptr, nullptr, nullptr, 0};
  char* json = nullptr;
  CHECK(lcy_kolmogorov(&params, &json) == LCY_ERR_RELOCATION_NEEDED);
  params.center_x = "3";
  params.center_y = "3";
  REQUIRE(lcy_kolmogorov(&params, &json) == LCY_OK);
  const std::string out = take(json);
  CHECK(out.find("\"base_reports\"") != std::string::npos);
  CHECK(out.find("\"total\":5") != std::string::npos);
}
