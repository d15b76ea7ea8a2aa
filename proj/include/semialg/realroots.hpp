#pragma once
//
// Certified real-root counting and isolation for univariate rational
// polynomials via Sturm sequences, plus exact sign evaluation of other
// polynomials at isolated (possibly irrational) roots.
//

#include <optional>
#include <vector>

#include "semialg/polycore.hpp"
#include "semialg/upoly.hpp"

namespace semialg {

struct Interval {
  Rational lo;
  Rational hi;
};

struct SturmChain {
  std::vector<UPoly> seq;

  explicit SturmChain(const UPoly& p);
  // Sign variations at t, zeros skipped.
  int variations(const Rational& t) const;
};

// Number of distinct real roots in (a, b]. Throws EndpointRootError when
// p(a) = 0 or p(b) = 0; the caller must pick other endpoints.
std::size_t sturm_count(const Polynomial& p, const Rational& a, const Rational& b);
std::size_t sturm_count(const UPoly& p, const Rational& a, const Rational& b);

// A real algebraic number: the unique root of a squarefree `poly` in the open
// interval (lo, hi), with poly(lo), poly(hi) != 0. `exact` is set once a
// refinement step lands on the root itself.
struct RealRoot {
  UPoly poly;
  Rational lo;
  Rational hi;
  std::optional<Rational> exact;

  bool is_exact() const { return exact.has_value(); }
  // One bisection step.
  void refine();
  // Refine until hi - lo < width (or exact).
  void refine_to(const Rational& width);
  Rational approx() const { return exact ? *exact : (lo + hi) / 2; }
};

// Distinct real roots of p inside the open box, ascending, as pairwise
// disjoint isolating intervals. Roots landed on exactly by bisection carry
// `exact`. Throws EndpointRootError if a box endpoint is a root.
std::vector<RealRoot> isolate_real_roots(const UPoly& p, const Interval& box);
std::vector<RealRoot> isolate_real_roots(const UPoly& p);

// Interval-only view of isolate_real_roots.
std::vector<Interval> isolate_roots(const Polynomial& p, const Interval& box);

// Exact sign of g at the root; refines `root` in place as needed.
int sign_at(const UPoly& g, RealRoot& root);
// -1, 0, +1 for root <, =, > x.
int compare(RealRoot& root, const Rational& x);

// The root's value when it is rational. Certification: any rational root p/q
// of an integer polynomial has q dividing the leading coefficient, so once the
// interval is narrower than 1/lc^2 the simplest rational in it is the only
// candidate.
std::optional<Rational> rational_value(RealRoot& root);

// Simplest rational (smallest denominator) in the closed interval [lo, hi].
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

}  // namespace semialg
