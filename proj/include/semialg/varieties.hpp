#pragma once
//
// Declarative variety specifications with declared dimension and degree,
// generalized Bezout, and degree checks by seeded random linear slicing.
//
// Dimension is declared, never computed. The degree of a real hypersurface is
// read off the degree of its restriction to a line (a complex count), not the
// number of real intersection points.
//

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "semialg/polycore.hpp"

namespace semialg {

struct CompleteIntersection {
  std::vector<Polynomial> equations;
};

struct Hypersurface {
  Polynomial equation;
};

// t -> (num_1(t), ..., num_N(t)) / den(t). den must have no real root. A
// closed curve also contains the limit point at t = +-infinity, which then
// joins the two ends of the parameter line.
struct ParamCurve {
  std::vector<Polynomial> numerators;
  Polynomial denominator = Polynomial::constant(1, 1);
  bool closed = false;
};

struct ParamSurface {
  std::vector<Polynomial> maps;  // nvars == 2 each
};

struct UnionOfAffineSubspaces {
  std::vector<AffineMap> pieces;
};

struct FullSpace {};

using VarietyShape = std::variant<CompleteIntersection, Hypersurface, ParamCurve, ParamSurface,
                                  UnionOfAffineSubspaces, FullSpace>;

struct VarietySpec {
  VarietyShape shape;
  std::size_t ambient_dim = 0;
  std::size_t declared_dim = 0;
  std::size_t declared_deg = 1;

  std::string kind_name() const;
};

VarietySpec make_full_space(std::size_t n);
VarietySpec make_hypersurface(Polynomial q, std::size_t declared_deg);
VarietySpec make_param_curve(ParamCurve curve, std::size_t declared_deg);
VarietySpec make_affine_union(std::vector<AffineMap> pieces, std::size_t dim);
// The unit circle x^2 + y^2 = 1 as a closed rational curve
// t -> ((1 - t^2), 2t) / (1 + t^2); t = infinity gives (-1, 0).
VarietySpec unit_circle();

// Product of the degrees; the empty product is 1 (ambient space).
BigInt bezout_degree(std::span<const unsigned> degrees);

// Seeded slicing degree; majority over trials. Throws GenericityError when
// the trials do not produce a strict majority, InconsistencyError when the
// majority differs from declared_deg, UnsupportedError for other kinds.
std::size_t degree_by_slicing(const VarietySpec& v, unsigned trials, std::uint64_t seed);

struct ValidationReport {
  bool pass = true;
  std::vector<std::string> reasons;
};

ValidationReport validate(const VarietySpec& v, std::uint64_t seed = 1);

// Exact test: do the images of two affine maps meet?
bool affine_images_intersect(const AffineMap& a, const AffineMap& b);

Json to_json(const VarietySpec& v);
VarietySpec variety_from_json(const Json& j);
Json to_json(const ValidationReport& r);

}  // namespace semialg
