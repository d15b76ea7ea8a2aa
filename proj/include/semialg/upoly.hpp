#pragma once
//
// Dense univariate polynomials over Q, the working form for Sturm chains,
// root isolation and resultants.
//

#include <span>
#include <vector>

#include "semialg/polycore.hpp"

namespace semialg {

class UPoly {
 public:
  UPoly() = default;
  // coeffs[k] multiplies t^k; trailing zeros are trimmed.
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }
  // From a Polynomial with nvars == 1.
  static UPoly from(const Polynomial& p);

  Polynomial to_polynomial() const;

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& t) const;
  int sign_at(const Rational& t) const { return sgn((*this)(t)); }

  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Rational& c);
  UPoly operator-() const;
  friend bool operator==(const UPoly& a, const UPoly& b) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct DivMod {
  UPoly quotient;
  UPoly remainder;
};

DivMod divmod(const UPoly& a, const UPoly& b);
// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
// p / gcd(p, p'), monic.
UPoly squarefree_part(const UPoly& p);
// Every real root lies strictly inside (-B, B); B is a power of two.
Rational root_bound(const UPoly& p);
// Resultant via the Sylvester determinant with formal degrees m, n
// (allows vanishing leading coefficients after specialization).
Rational resultant(const UPoly& a, const UPoly& b, int formal_deg_a, int formal_deg_b);

// Q(x0, y) as a univariate in y, for a bivariate Q(x, y).
UPoly slice_at_x(const Polynomial& q, const Rational& x0);
// Bivariate Q(x, y) viewed as a univariate in x (Q must not depend on y).
UPoly as_univariate_in(const Polynomial& q, std::size_t var);
// Res_y(A, B) as a polynomial in x, by evaluation at enough points and
// Lagrange interpolation.
UPoly resultant_in_y(const Polynomial& a, const Polynomial& b);

}  // namespace semialg
