#pragma once
//
// Realizable sign conditions and zero-nonzero patterns of a polynomial
// family on a parametrized variety, with connected-component counts.
//
// Sampling happens on parameter domains. A sample is a node of a graph whose
// edges join parameter-space neighbours; nodes carrying equal sign vectors
// are merged with union-find and every class becomes one component. Zero
// entries come only from exact evaluation at rational points or from
// certified roots of the restricted polynomials, never from rounding.
//
// On curves the critical points (all roots of the restricted family) are
// always nodes, so the count is exact once every pair of consecutive
// critical nodes has a sample between them. On 2- and 3-parameter grids the
// count is a resolution-dependent estimate, stabilized by refinement.
//

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semialg/polycore.hpp"
#include "semialg/realroots.hpp"
#include "semialg/varieties.hpp"

namespace semialg {

class PolyFamily {
 public:
  PolyFamily() = default;
  PolyFamily(std::size_t nvars, std::vector<Polynomial> polys);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Polynomial>& polys() const { return polys_; }
  std::size_t s() const { return polys_.size(); }
  // Max total degree; 0 for the empty family.
  int d() const;

 private:
  std::size_t nvars_ = 0;
  std::vector<Polynomial> polys_;
};

// Entries in {-1, 0, +1}.
using SignVector = std::vector<int>;
// Entries in {0, 1}; 0 marks a vanishing polynomial.
using Pattern = std::vector<int>;

std::string sign_string(const SignVector& v);
SignVector parse_sign_string(std::string_view text);
std::string pattern_string(const Pattern& p);

// t -> numerators(t) / denominator(t), denominator without real roots.
struct CurvePiece {
  std::vector<Polynomial> numerators;
  Polynomial denominator = Polynomial::constant(1, 1);
  bool closed = false;
  std::size_t degree = 1;
};

// One compact oval of the plane curve q = 0, the only component of q = 0
// inside x_window * y_window. Every vertical slice through the window meets
// the oval in 0 or 2 points and q stays nonzero on the window boundary.
struct OvalPiece {
  Polynomial q;
  Interval x_window;
  Interval y_window;
  Rational center_x;
};

// params -> maps(params), sampled on a uniform grid over the box.
struct GridPiece {
  std::size_t params = 0;
  std::vector<Polynomial> maps;
};

using SamplingPiece = std::variant<CurvePiece, OvalPiece, GridPiece>;

// Parametrized pieces of a variety. Throws UnsupportedError for implicit
// kinds (hypersurfaces, complete intersections) and for full spaces of
// dimension above 3.
std::vector<SamplingPiece> sampling_pieces(const VarietySpec& v);

struct Witness {
  std::size_t piece = 0;
  // Rational parameter coordinates: grid parameters, or the abscissa on an
  // oval. Empty for an algebraic curve parameter.
  std::vector<Rational> params;
  // Algebraic coordinate: the curve parameter, or the ordinate on an oval.
  std::optional<RealRoot> root;
  // The limit point of a closed curve.
  bool at_infinity = false;
  // The ambient point when all of its coordinates are rational.
  std::optional<std::vector<Rational>> point;
};

struct CellInfo {
  std::size_t component_count = 0;
  // One representative per component.
  std::vector<Witness> witnesses;
};

struct AtlasOptions {
  // Maximum number of sample nodes per piece.
  std::uint64_t budget = std::uint64_t{1} << 22;
  // Worker threads for grid evaluation.
  unsigned threads = 1;
};

struct RegionAtlas {
  VarietySpec variety;
  PolyFamily family;
  std::vector<SamplingPiece> pieces;
  std::vector<Interval> box;
  std::size_t resolution = 0;
  std::uint64_t seed = 0;
  AtlasOptions options;

  std::map<SignVector, CellInfo> cells;
  // Set by refine when the new counts equal the previous ones and nothing
  // is left to resolve.
  bool converged = false;
  // Pairs of adjacent critical nodes still lacking a sample between them.
  std::size_t pending_gaps = 0;
  // Per-piece extra parameter samples accumulated by refinement, and the
  // samples the next refinement will add.
  std::vector<std::vector<Rational>> extra_samples;
  std::vector<std::vector<Rational>> proposed_samples;

  std::size_t total_components() const;
  std::set<SignVector> sign_vectors() const;
  std::map<SignVector, std::size_t> counts() const;
};

// `box` holds one interval per parameter of the pieces; an empty box means
// [-1, 1] per parameter. Curve parameter boxes are widened to contain all
// critical parameters, so curve counts are global. Oval pieces use their own
// windows. `seed` is recorded in the atlas; the engine itself is
// deterministic. resolution >= 8.
RegionAtlas enumerate_sign_conditions(const PolyFamily& family, const VarietySpec& v,
                                      const std::vector<Interval>& box, std::size_t resolution,
                                      std::uint64_t seed, const AtlasOptions& options = {});
// Same, with explicitly supplied pieces (used for implicit varieties whose
// real points are provided by a construction).
RegionAtlas enumerate_sign_conditions(const PolyFamily& family, const VarietySpec& v,
                                      std::vector<SamplingPiece> pieces,
                                      const std::vector<Interval>& box, std::size_t resolution,
                                      std::uint64_t seed, const AtlasOptions& options = {});

// Doubles the resolution, adds the proposed gap samples and re-enumerates.
RegionAtlas refine(const RegionAtlas& atlas);

// Refines until converged; throws BudgetError when max_resolution would be
// exceeded first.
RegionAtlas refine_until_converged(RegionAtlas atlas, std::size_t max_resolution);

// Sign vector recomputed from scratch at a witness.
SignVector witness_signs(const PolyFamily& family, const SamplingPiece& piece, const Witness& w);
// Every witness lies on its piece and recomputes to its cell key.
bool verify_atlas(const RegionAtlas& atlas);

struct PatternCell {
  std::vector<Witness> points;
  // Sum of the degrees of the Zariski closure of the pattern's realization.
  BigInt closure_degree = 0;
};

using PatternMap = std::map<Pattern, PatternCell>;

// Exact zero-nonzero pattern enumeration on curves: ParamCurve, full line,
// or disjoint 1-dimensional affine pieces.
PatternMap enumerate_patterns(const PolyFamily& family, const VarietySpec& v);
BigInt closure_degree_sum(const PatternMap& patterns);

Json to_json(const PolyFamily& f);
PolyFamily poly_family_from_json(const Json& j);
Json to_json(const Witness& w);
Json to_json(const RegionAtlas& atlas);
Json to_json(const PatternMap& patterns);

}  // namespace semialg
