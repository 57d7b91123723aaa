#pragma once

#include <string>

#include "limcyc/geometry.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

/// (m-1)(m-2)/2 + [1 + (-1)^m]/2. Throws InvalidArgument for m <= 0.
long har(long m);

/// Catalog curve of degree m (1..4) with har(m) ovals.
/// Throws UnsupportedDegree outside the catalog.
Poly harnack_curve(int m);

/// A region enclosing every oval of harnack_curve(m) with margin.
Region harnack_region(int m);

enum class BoundsFamily { Hilbert, Kolmogorov, Square };
enum class Exactness { Exact, LowerBound };

struct BoundsEntry {
  BoundsFamily family;
  int n;
  long value;
  Exactness exactness;
};

const char* family_name(BoundsFamily f);
const char* exactness_name(Exactness e);
/// Throws InvalidArgument for an unknown name.
BoundsFamily parse_family(const std::string& name);

/// Tabulated value. Throws OutOfTable outside the table's range.
BoundsEntry known_lower_bound(BoundsFamily family, int n);

/// Lower bound H(n) + har(m) for H(n + m).
long recurrent_bound(int n, int m);

struct HcBound {
  long value;
  int base_n;
  int curve_degree;
  int ovals;
};

/// Lower bound H(n) + O(C) for the curve-restricted number at degree
/// n + deg C.
HcBound hc_bound(int n, const Poly& curve, const Region& region, int grid_n = kDefaultGrid);

}  // namespace limcyc
