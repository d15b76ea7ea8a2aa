#pragma once
//
// Exact sparse multivariate polynomials over Q.
//
// Everything in the math core is an exact rational (GMP mpq). Polynomials are
// immutable-by-convention values keyed by exponent vector; no stored
// coefficient is ever zero.
//

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace semialg {

using BigInt = mpz_class;
using Rational = mpq_class;
using Exponent = std::vector<std::uint32_t>;
using Json = nlohmann::json;

// "p/q" or "p"; parse accepts an optional leading '-' and canonicalizes.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);
Rational parse_rational(std::string_view text);
int sign(const Rational& q);

class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial monomial(Exponent exp, const Rational& c);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  Rational coefficient(const Exponent& exp) const;

  // Accumulates; drops the term when the sum cancels.
  void add_term(const Exponent& exp, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  Polynomial pow(unsigned k) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

enum class ArithOp { add, sub, mul };

// x -> M x + offset, M is codomain_dim x domain_dim.
struct AffineMap {
  std::size_t domain_dim = 0;
  std::size_t codomain_dim = 0;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> offset;

  AffineMap() = default;
  AffineMap(std::vector<std::vector<Rational>> m, std::vector<Rational> b);

  std::vector<Rational> apply(std::span<const Rational> x) const;
  std::size_t rank() const;
  // Coordinate functions as polynomials in domain_dim variables.
  std::vector<Polynomial> coordinate_polynomials() const;
};

Rational evaluate(const Polynomial& p, std::span<const Rational> x);
Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);
// Pullback p o m.
Polynomial restrict(const Polynomial& p, const AffineMap& m);
// Substitutes X_i := maps[i]; all maps share one variable count.
Polynomial compose(const Polynomial& p, std::span<const Polynomial> maps);
// Cleared-denominator pullback through X_i := num[i] / den:
// den^degree * p(num / den), where degree >= total_degree(p).
Polynomial compose_rational(const Polynomial& p, std::span<const Polynomial> num,
                            const Polynomial& den, int degree);
// New variable X0 is inserted at index 0.
Polynomial homogenize(const Polynomial& p);
// Sets X0 := 1 and drops it.
Polynomial dehomogenize(const Polynomial& p);

// Seeded source of dyadic rationals. mt19937_64 output is fixed by the
// standard, so raw draws are reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Nonzero dyadic +-(1..2^num_bits)/2^den_bits.
  Rational nonzero_dyadic(unsigned num_bits = 12, unsigned den_bits = 8);
  // Dyadic in [-scale, scale] on a grid of 2^-den_bits.
  Rational dyadic(unsigned den_bits = 10, unsigned scale = 1);

 private:
  std::mt19937_64 engine_;
};

// Dense, exact total degree `degree`, all coefficients nonzero dyadic.
Polynomial generic_poly(std::size_t nvars, unsigned degree, std::uint64_t seed);

// Product of `count` generic degree-1 forms.
Polynomial generic_linear_product(std::size_t nvars, unsigned count, Rng& rng);

Json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);
Json to_json(const AffineMap& m);
AffineMap affine_map_from_json(const Json& j);
Json to_json(std::span<const Rational> v);
// Non-negative JSON integer, whatever its stored signedness.
inline bool json_is_count(const Json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
}
// JSON number when the value fits in int64, decimal string otherwise.
Json json_integer(const BigInt& z);
std::vector<Rational> rational_vector_from_json(const Json& j);

// Human-readable rendering, variables named X1..Xn (X0 for index 0 when
// `zero_based`).
std::string format_polynomial(const Polynomial& p, bool zero_based = false);

}  // namespace semialg
