#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "limcyc/dynamics.hpp"
#include "limcyc/geometry.hpp"
#include "limcyc/poly.hpp"

namespace limcyc {

/// Exact witness that C = 0 is invariant: C_x p + C_y q = K C.
struct InvarianceCertificate {
  Poly curve;
  VectorField field;
  Poly cofactor;
};

struct CofactorCheck {
  bool invariant = false;
  std::optional<InvarianceCertificate> certificate;
  /// Remainder of C_x p + C_y q on division by C (zero iff invariant).
  Poly remainder;
};

/// Throws InvalidArgument for a constant curve, Internal if an exact
/// cofactor exceeds degree deg(x) - 1.
CofactorCheck cofactor(const Poly& c, const VectorField& x);

/// Recomputes the identity; throws NotInvariant if it fails.
void verify_certificate(const InvarianceCertificate& cert);

struct ChristopherResult {
  VectorField field;
  InvarianceCertificate certificate;
  std::vector<Oval> ovals;
};

/// Y = (alpha C - D C_y, beta C + D C_x), which has every oval of C = 0 as a
/// hyperbolic limit cycle. Preconditions are checked in order and each
/// failure raises its own code: InvalidArgument (constant C),
/// UnsupportedDegree, DegenerateCurve, DividingLine, DegenerateParameters,
/// LineMeetsOval.
ChristopherResult christopher(const Poly& c, const LinearPoly& d, const Rat& alpha, const Rat& beta,
                              const Region& region = {}, int grid_n = kDefaultGrid);

/// D = x - (x_max + 1) with x_max the right edge of the ovals (1 when there
/// are none, snapped to an integer when within 1e-6 of one, otherwise rounded
/// up to a multiple of 1/1024). Shifted further right while D divides C.
LinearPoly default_line(const Poly& c, std::span<const Oval> ovals);

/// (1, 0), or (0, 1) when D_x = 0.
std::pair<Rat, Rat> default_parameters(const LinearPoly& d);

/// Catalog field with concentric hyperbolic limit cycles, optionally
/// relocated: the circles have center (cx, cy) and radii scale * sqrt(rho_i).
struct BaseField {
  VectorField field;
  std::vector<Rat> square_radii;
  Rat cx{0};
  Rat cy{0};
  Rat scale{1};

  /// Relocated radii scale * sqrt(rho_i), in input order.
  std::vector<double> radii() const;
  /// The rightmost point of each cycle, usable as a refinement seed.
  std::vector<Point> cycle_seeds() const;
  /// Characteristic exponents from the polar reduction, invariant under
  /// relocation (the pushforward keeps time).
  std::vector<double> predicted_exponents() const;
};

/// X = (-y + x f(x^2+y^2), x + y f(x^2+y^2)), f(s) = prod(rho_i - s).
/// Throws InvalidArgument for an empty list, a nonpositive entry or a repeat.
BaseField base_field(const std::vector<Rat>& square_radii);

/// Pushforward by z -> center + scale * z: components s p((x-cx)/s, (y-cy)/s).
VectorField relocate(const VectorField& x, const Rat& cx, const Rat& cy, const Rat& scale);
BaseField relocate(const BaseField& base, const Rat& cx, const Rat& cy, const Rat& scale);

struct CompositionResult {
  VectorField z;
  Rat epsilon;
  std::vector<CycleReport> base_reports;
  std::vector<CycleReport> oval_reports;
  InvarianceCertificate certificate;
  int n = 0;  // degree of the base field
  int c = 0;  // degree of the curve
  bool restriction_identity = false;
  std::vector<std::string> warnings;
  /// Kolmogorov / game builders: z = (F p~, G q~) with the factors removed.
  std::optional<VectorField> reduced;
  /// Kolmogorov / game builders: certificates for each invariant line.
  std::vector<InvarianceCertificate> line_certificates;

  int total_degree() const { return z.degree(); }
};

/// z = (C u + eps p_y, C v + eps q_y) with cofactor C_x u + C_y v + eps K.
/// eps = 0 is accepted and flagged (C = 0 is then a curve of singular
/// points). Throws NotInvariant if `y` is not a valid certificate for c.
CompositionResult compose(const Poly& c, const VectorField& x_base, const InvarianceCertificate& y,
                          const Rat& epsilon);

struct SearchOptions {
  int grid_n = kDefaultGrid;
  int max_halvings = 80;
  CycleOptions cycle{};
  /// Persisted cycles must lie within this fraction of their diameter.
  double persistence_radius = 0.2;
};

/// Halves eps from 1 until every oval of C and every catalog cycle of the
/// base field are hyperbolic cycles of z. Throws RelocationNeeded when the
/// base cycles' disk meets C = 0, SearchFailure after max_halvings.
CompositionResult epsilon_search(const Poly& c, const BaseField& base, const InvarianceCertificate& y,
                                 const Region& region, const SearchOptions& opts = {});

/// Same search with a fixed eps (no halving).
CompositionResult verify_composition(const Poly& c, const BaseField& base, const InvarianceCertificate& y,
                                     const Region& region, const Rat& epsilon, const SearchOptions& opts = {});

struct BuilderInput {
  std::vector<Rat> square_radii;
  Rat cx{0};
  Rat cy{0};
  Rat scale{1};
  std::optional<LinearPoly> line;
  std::optional<Rat> alpha;
  std::optional<Rat> beta;
};

/// C = xy; the result has the form (x p~, y q~) with all cycles in the open
/// first quadrant. Throws RelocationNeeded if the base cycles leave it.
CompositionResult build_kolmogorov(const BuilderInput& in, const SearchOptions& opts = {});

/// C = x(x-1)y(y-1); components divisible by x(x-1) and y(y-1), cycles in
/// the open unit square.
CompositionResult build_game(const BuilderInput& in, const SearchOptions& opts = {});

}  // namespace limcyc
