#pragma once

#include <random>

#include "limcyc/poly.hpp"

namespace limcyc::testing {

inline Rat rat(long n, long d = 1) {
  Rat r{mpz_class(n), mpz_class(d)};
  r.canonicalize();
  return r;
}

/// Random polynomial of total degree <= max_degree with small rational
/// coefficients; about half the monomials are present.
inline Poly random_poly(std::mt19937_64& rng, int max_degree, int coeff_range = 5) {
  std::uniform_int_distribution<int> num(-coeff_range, coeff_range);
  std::uniform_int_distribution<int> den(1, 3);
  std::bernoulli_distribution keep(0.5);
  Poly p;
  for (int d = 0; d <= max_degree; ++d) {
    for (int i = 0; i <= d; ++i) {
      if (keep(rng)) p.add_term({i, d - i}, rat(num(rng), den(rng)));
    }
  }
  return p;
}

inline Rat random_rat(std::mt19937_64& rng, int range = 7) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 5);
  return rat(num(rng), den(rng));
}

}  // namespace limcyc::testing
