#pragma once
//
// Families on which the zero-nonzero and sign-condition bounds are attained,
// with their closed-form expected counts, and the Grassmannian degree.
//

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semialg/regions.hpp"

namespace semialg {

// Concrete values for the small perturbations of the ovals construction:
// deltas[i][j] increase in (i, j) order, each `contraction` times the next,
// and the largest is `contraction` times eps.
struct PerturbationSchedule {
  Rational contraction;
  Rational eps;
  std::vector<std::vector<Rational>> deltas;
};

// eps = contraction and delta at ascending rank r = contraction^(s d + 1 - r).
// Throws InputError unless 0 < contraction < 1.
PerturbationSchedule make_schedule(unsigned long s, unsigned long d, const Rational& contraction);

enum class ExpectedKind { component_total, closure_degree_sum };

struct TightInstance {
  std::string name;
  Json params = Json::object();
  VarietySpec variety;
  PolyFamily family;
  BigInt expected_total = 0;
  ExpectedKind expected_kind = ExpectedKind::component_total;
  // Real points of the variety for the sampling engine.
  std::vector<SamplingPiece> pieces;
  std::optional<PerturbationSchedule> schedule;
};

// D^2 small ovals of sum_i prod_j (X_i - j)^2 - eps around the integer
// points of [0, D-1]^2, cut by s products of d vertical lines close to
// X_1 = 0. Expected component total D (4 s d + D - 1). Throws
// HypothesisError when the contraction is too large for the ovals to be
// separated or for the lines to cross the first column of ovals.
TightInstance ovals_family(unsigned long D, unsigned long s, unsigned long d,
                           const Rational& contraction = Rational(1) / 64);

// D disjoint affine p-planes in N-space and s products of d generic linear
// forms. Expected closure-degree sum D * sum_{i<=p} C(s,i) d^i. Requires
// N > 2p (HypothesisError).
TightInstance subspace_family(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                              unsigned long N, std::uint64_t seed);

// Degree of Gr(m, N) in its Plucker embedding: (m(N-m))! prod_{i<m} i!/(N-m+i)!.
BigInt grassmannian_degree(unsigned long m, unsigned long N);

struct TightnessResult {
  BigInt expected = 0;
  BigInt measured = 0;
  bool equal = false;
  // Resolution of the converged atlas; 0 for the exact pattern engine.
  std::size_t resolution = 0;
  Json detail;
};

// Runs the matching engine: refined sign-condition enumeration up to
// max_resolution for component totals, exact pattern enumeration otherwise.
TightnessResult check_tightness(const TightInstance& inst, std::size_t max_resolution = 1 << 12,
                                const AtlasOptions& options = {});

Json to_json(const PerturbationSchedule& s);
Json to_json(const TightInstance& inst);
Json to_json(const TightnessResult& r);

}  // namespace semialg
