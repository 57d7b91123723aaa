#include "limcyc/bounds.hpp"

#include <algorithm>
#include <array>
#include <span>

#include "limcyc/error.hpp"

namespace limcyc {

long har(long m) {
  if (m <= 0) throw Error(ErrorCode::InvalidArgument, "har(m) needs m >= 1");
  return (m - 1) * (m - 2) / 2 + (m % 2 == 0 ? 1 : 0);
}

Poly harnack_curve(int m) {
  const Poly x = Poly::x();
  const Poly y = Poly::y();
  switch (m) {
    case 1:
      return x;
    case 2:
      return x * x + y * y - Poly(1);
    case 3:
      return y * y - x * (x - Poly(1)) * (x - Poly(2));
    case 4:
      return (x * x + Poly(2) * y * y - Poly(1)) * (Poly(2) * x * x + y * y - Poly(1)) + Poly(Rat(1, 100));
    default:
      throw Error(ErrorCode::UnsupportedDegree,
                  "harnack catalog covers degrees 1 to 4; degree " + std::to_string(m) + " is not available");
  }
}

Region harnack_region(int m) {
  switch (m) {
    case 1:
    case 2:
    case 4:
      return {-2.0, 2.0, -2.0, 2.0};
    case 3:
      return {-1.0, 4.0, -4.0, 4.0};
    default:
      throw Error(ErrorCode::UnsupportedDegree, "harnack catalog covers degrees 1 to 4");
  }
}

namespace {

struct Table {
  int first_n;
  std::span<const long> values;
  int exact_through;  // entries with n <= exact_through are exact
};

constexpr std::array<long, 9> kHilbert{4, 13, 28, 37, 53, 74, 96, 120, 142};
constexpr std::array<long, 8> kKolmogorov{0, 0, 6, 13, 22, 28, 37, 53};
constexpr std::array<long, 9> kSquare{0, 1, 5, 5, 5, 13, 28, 37, 53};

Table table(BoundsFamily f) {
  switch (f) {
    case BoundsFamily::Hilbert:
      return {2, kHilbert, 0};
    case BoundsFamily::Kolmogorov:
      return {1, kKolmogorov, 2};
    case BoundsFamily::Square:
      return {2, kSquare, 3};
  }
  throw Error(ErrorCode::Internal, "unknown bounds family");
}

}  // namespace

const char* family_name(BoundsFamily f) {
  switch (f) {
    case BoundsFamily::Hilbert:
      return "hilbert";
    case BoundsFamily::Kolmogorov:
      return "kolmogorov";
    case BoundsFamily::Square:
      return "square";
  }
  return "?";
}

const char* exactness_name(Exactness e) { return e == Exactness::Exact ? "exact" : "lower_bound"; }

BoundsFamily parse_family(const std::string& name) {
  for (auto f : {BoundsFamily::Hilbert, BoundsFamily::Kolmogorov, BoundsFamily::Square}) {
    if (name == family_name(f)) return f;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "' (expected hilbert, kolmogorov or square)");
}

BoundsEntry known_lower_bound(BoundsFamily family, int n) {
  const Table t = table(family);
  const int last = t.first_n + static_cast<int>(t.values.size()) - 1;
  if (n < t.first_n || n > last) {
    throw Error(ErrorCode::OutOfTable,
                std::string(family_name(family)) + " table covers n = " + std::to_string(t.first_n) + ".." +
                    std::to_string(last) +
                    "; for large n only the asymptotic (n^2 log2 n)/2 - M n^2 log2 log2 n is known");
  }
  return {family, n, t.values[static_cast<std::size_t>(n - t.first_n)],
          n <= t.exact_through ? Exactness::Exact : Exactness::LowerBound};
}

long recurrent_bound(int n, int m) { return known_lower_bound(BoundsFamily::Hilbert, n).value + har(m); }

HcBound hc_bound(int n, const Poly& curve, const Region& region, int grid_n) {
  const long base = known_lower_bound(BoundsFamily::Hilbert, n).value;
  const auto ovals = trace_ovals(curve, region, grid_n);
  return {base + static_cast<long>(ovals.size()), n, curve.degree(), static_cast<int>(ovals.size())};
}

}  // namespace limcyc
