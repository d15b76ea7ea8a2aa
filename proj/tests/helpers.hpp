#pragma once

#include <initializer_list>
#include <utility>

#include "semialg/polycore.hpp"
#include "semialg/upoly.hpp"

namespace testing_helpers {

using semialg::Exponent;
using semialg::Polynomial;
using semialg::Rational;

inline Rational q(const char* s) { return semialg::parse_rational(s); }

inline Polynomial poly(std::size_t nvars,
                       std::initializer_list<std::pair<Exponent, const char*>> terms) {
  Polynomial p(nvars);
  for (const auto& [e, c] : terms) p.add_term(e, q(c));
  return p;
}

inline Polynomial var(std::size_t nvars, std::size_t i) { return Polynomial::variable(nvars, i); }
inline Polynomial cst(std::size_t nvars, const Rational& c) { return Polynomial::constant(nvars, c); }

// Univariate from integer roots: prod (t - r).
inline semialg::UPoly from_roots(std::initializer_list<long> roots) {
  semialg::UPoly p = semialg::UPoly::constant(1);
  for (long r : roots) p = p * semialg::UPoly({Rational(-r), Rational(1)});
  return p;
}

}  // namespace testing_helpers
