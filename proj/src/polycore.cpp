#include "semialg/polycore.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "semialg/errors.hpp"

namespace semialg {

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const BigInt& z) { return z.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
  });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  std::string_view num = body;
  std::string_view den = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) {
    throw InputError("malformed rational: '" + std::string(text) + "'");
  }
  BigInt n(std::string(num), 10);
  BigInt d(std::string(den), 10);
  if (d == 0) throw InputError("zero denominator in rational: '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

int sign(const Rational& q) { return sgn(q); }

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw InputError("variable index out of range");
  Polynomial p(nvars);
  Exponent e(nvars, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

Polynomial Polynomial::monomial(Exponent exp, const Rational& c) {
  Polynomial p(exp.size());
  p.add_term(exp, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 && total_degree() == 0);
}

int Polynomial::total_degree() const {
  int best = -1;
  for (const auto& [e, c] : terms_) {
    int d = static_cast<int>(std::accumulate(e.begin(), e.end(), 0u));
    best = std::max(best, d);
  }
  return best;
}

int Polynomial::degree_in(std::size_t var) const {
  if (var >= nvars_) throw InputError("variable index out of range");
  int best = -1;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[var]));
  return best;
}

Rational Polynomial::coefficient(const Exponent& exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& exp, const Rational& c) {
  if (exp.size() != nvars_) throw InputError("exponent length does not match nvars");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exp, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw InputError("nvars mismatch in polynomial addition");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.nvars_ != nvars_) throw InputError("nvars mismatch in polynomial subtraction");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars_ != b.nvars_) throw InputError("nvars mismatch in polynomial multiplication");
  Polynomial r(a.nvars_);
  Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial result = constant(nvars_, Rational(1));
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

// ----------------------------------------------------------------- AffineMap

AffineMap::AffineMap(std::vector<std::vector<Rational>> m, std::vector<Rational> b)
    : matrix(std::move(m)), offset(std::move(b)) {
  codomain_dim = matrix.size();
  domain_dim = matrix.empty() ? 0 : matrix.front().size();
  if (offset.size() != codomain_dim) throw InputError("affine offset length mismatch");
  for (const auto& row : matrix) {
    if (row.size() != domain_dim) throw InputError("ragged affine matrix");
  }
}

std::vector<Rational> AffineMap::apply(std::span<const Rational> x) const {
  if (x.size() != domain_dim) throw InputError("affine map domain mismatch");
  std::vector<Rational> y = offset;
  for (std::size_t i = 0; i < codomain_dim; ++i) {
    for (std::size_t j = 0; j < domain_dim; ++j) y[i] += matrix[i][j] * x[j];
  }
  return y;
}

std::size_t AffineMap::rank() const {
  auto m = matrix;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < domain_dim && rank < codomain_dim; ++col) {
    std::size_t pivot = rank;
    while (pivot < codomain_dim && m[pivot][col] == 0) ++pivot;
    if (pivot == codomain_dim) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < codomain_dim; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < domain_dim; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

std::vector<Polynomial> AffineMap::coordinate_polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(codomain_dim);
  for (std::size_t i = 0; i < codomain_dim; ++i) {
    Polynomial p = Polynomial::constant(domain_dim, offset[i]);
    for (std::size_t j = 0; j < domain_dim; ++j) {
      p += Polynomial::variable(domain_dim, j) * matrix[i][j];
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ------------------------------------------------------------------ core ops

Rational evaluate(const Polynomial& p, std::span<const Rational> x) {
  if (x.size() != p.nvars()) throw InputError("evaluation point has wrong dimension");
  // powers[i][k] = x_i^k, grown lazily
  std::vector<std::vector<Rational>> powers(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) powers[i].push_back(Rational(1));
  Rational total = 0;
  Rational term;
  for (const auto& [e, c] : p.terms()) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * x[i]);
      if (e[i] > 0) term *= pw[e[i]];
    }
    total += term;
  }
  return total;
}

Polynomial arith(const Polynomial& a, const Polynomial& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
  }
  throw InputError("unknown arithmetic op");
}

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.nvars()) throw InputError("derivative variable out of range");
  Polynomial r(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    r.add_term(d, c * e[var]);
  }
  return r;
}

Polynomial compose(const Polynomial& p, std::span<const Polynomial> maps) {
  if (maps.size() != p.nvars()) throw InputError("composition arity mismatch");
  std::size_t m = maps.empty() ? 0 : maps.front().nvars();
  for (const auto& q : maps) {
    if (q.nvars() != m) throw InputError("composition maps disagree on nvars");
  }
  std::vector<std::vector<Polynomial>> powers(maps.size());
  for (std::size_t i = 0; i < maps.size(); ++i) powers[i].push_back(Polynomial::constant(m, 1));
  Polynomial out(m);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(m, c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * maps[i]);
      if (e[i] > 0) term = term * pw[e[i]];
    }
    out += term;
  }
  return out;
}

Polynomial compose_rational(const Polynomial& p, std::span<const Polynomial> num,
                            const Polynomial& den, int degree) {
  if (num.size() != p.nvars()) throw InputError("composition arity mismatch");
  if (degree < p.total_degree()) throw InputError("clearing degree below polynomial degree");
  std::size_t m = den.nvars();
  std::vector<std::vector<Polynomial>> powers(num.size() + 1);
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (num[i].nvars() != m) throw InputError("composition maps disagree on nvars");
    powers[i].push_back(Polynomial::constant(m, 1));
  }
  auto& den_pw = powers.back();
  den_pw.push_back(Polynomial::constant(m, 1));
  Polynomial out(m);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(m, c);
    unsigned used = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      auto& pw = powers[i];
      while (pw.size() <= e[i]) pw.push_back(pw.back() * num[i]);
      if (e[i] > 0) term = term * pw[e[i]];
      used += e[i];
    }
    unsigned rest = static_cast<unsigned>(degree) - used;
    while (den_pw.size() <= rest) den_pw.push_back(den_pw.back() * den);
    if (rest > 0) term = term * den_pw[rest];
    out += term;
  }
  return out;
}

Polynomial restrict(const Polynomial& p, const AffineMap& m) {
  if (m.codomain_dim != p.nvars()) throw InputError("affine map codomain does not match nvars");
  auto coords = m.coordinate_polynomials();
  return compose(p, coords);
}

Polynomial homogenize(const Polynomial& p) {
  Polynomial h(p.nvars() + 1);
  int deg = p.total_degree();
  for (const auto& [e, c] : p.terms()) {
    Exponent he(e.size() + 1);
    unsigned sum = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      he[i + 1] = e[i];
      sum += e[i];
    }
    he[0] = static_cast<std::uint32_t>(deg) - sum;
    h.add_term(he, c);
  }
  return h;
}

Polynomial dehomogenize(const Polynomial& p) {
  if (p.nvars() == 0) throw InputError("cannot dehomogenize a polynomial in zero variables");
  Polynomial r(p.nvars() - 1);
  for (const auto& [e, c] : p.terms()) {
    r.add_term(Exponent(e.begin() + 1, e.end()), c);
  }
  return r;
}

// ----------------------------------------------------------------------- Rng

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InputError("empty range");
  // Rejection keeps the draw unbiased and platform independent.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

Rational Rng::nonzero_dyadic(unsigned num_bits, unsigned den_bits) {
  std::uint64_t mag = below(std::uint64_t{1} << num_bits) + 1;
  bool neg = (engine_() & 1u) != 0;
  BigInt num(static_cast<unsigned long>(mag));
  if (neg) num = -num;
  BigInt den = 1;
  den <<= den_bits;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational Rng::dyadic(unsigned den_bits, unsigned scale) {
  std::uint64_t span = (std::uint64_t{2} * scale << den_bits) + 1;
  std::int64_t v = static_cast<std::int64_t>(below(span)) -
                   static_cast<std::int64_t>(static_cast<std::uint64_t>(scale) << den_bits);
  BigInt den = 1;
  den <<= den_bits;
  Rational q(BigInt(static_cast<long>(v)), den);
  q.canonicalize();
  return q;
}

namespace {

void monomials_up_to(std::size_t nvars, unsigned degree, Exponent& cur, std::size_t idx,
                     unsigned remaining, std::vector<Exponent>& out) {
  if (idx == nvars) {
    out.push_back(cur);
    return;
  }
  for (unsigned k = 0; k <= remaining; ++k) {
    cur[idx] = k;
    monomials_up_to(nvars, degree, cur, idx + 1, remaining - k, out);
  }
  cur[idx] = 0;
}

}  // namespace

Polynomial generic_poly(std::size_t nvars, unsigned degree, std::uint64_t seed) {
  Rng rng(seed);
  Polynomial p(nvars);
  if (nvars == 0) {
    p.add_term({}, rng.nonzero_dyadic());
    return p;
  }
  std::vector<Exponent> monos;
  Exponent cur(nvars, 0);
  monomials_up_to(nvars, degree, cur, 0, degree, monos);
  for (const auto& e : monos) p.add_term(e, rng.nonzero_dyadic());
  return p;
}

Polynomial generic_linear_product(std::size_t nvars, unsigned count, Rng& rng) {
  Polynomial p = Polynomial::constant(nvars, 1);
  for (unsigned k = 0; k < count; ++k) {
    Polynomial form = Polynomial::constant(nvars, rng.nonzero_dyadic());
    for (std::size_t i = 0; i < nvars; ++i) {
      form += Polynomial::variable(nvars, i) * rng.nonzero_dyadic();
    }
    p = p * form;
  }
  return p;
}

// ---------------------------------------------------------------------- json

Json to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back(Json{{"exp", e}, {"coef", to_string(c)}});
  }
  return Json{{"nvars", p.nvars()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nvars") || !j.contains("terms")) {
    throw InputError("polynomial JSON needs 'nvars' and 'terms'");
  }
  if (!json_is_count(j["nvars"])) throw InputError("'nvars' must be a non-negative integer");
  Polynomial p(j["nvars"].get<std::size_t>());
  if (!j["terms"].is_array()) throw InputError("'terms' must be an array");
  for (const auto& t : j["terms"]) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coef") || !t["exp"].is_array() ||
        !t["coef"].is_string()) {
      throw InputError("term JSON needs 'exp' array and 'coef' string");
    }
    Exponent e;
    for (const auto& v : t["exp"]) {
      if (!json_is_count(v)) throw InputError("exponents must be non-negative integers");
      e.push_back(v.get<std::uint32_t>());
    }
    if (e.size() != p.nvars()) throw InputError("exponent vector length differs from nvars");
    p.add_term(e, parse_rational(t["coef"].get<std::string>()));
  }
  return p;
}

Json json_integer(const BigInt& z) {
  if (mpz_fits_slong_p(z.get_mpz_t())) return Json(z.get_si());
  return Json(z.get_str());
}

Json to_json(std::span<const Rational> v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

std::vector<Rational> rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) {
    if (v.is_string()) {
      out.push_back(parse_rational(v.get<std::string>()));
    } else if (v.is_number_integer()) {
      out.emplace_back(BigInt(static_cast<long>(v.get<std::int64_t>())));
    } else {
      throw InputError("rational entries must be strings like \"p/q\" or integers");
    }
  }
  return out;
}

Json to_json(const AffineMap& m) {
  Json rows = Json::array();
  for (const auto& r : m.matrix) rows.push_back(to_json(std::span<const Rational>(r)));
  return Json{{"domain_dim", m.domain_dim},
              {"codomain_dim", m.codomain_dim},
              {"matrix", std::move(rows)},
              {"offset", to_json(std::span<const Rational>(m.offset))}};
}

AffineMap affine_map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j.contains("offset")) {
    throw InputError("affine map JSON needs 'matrix' and 'offset'");
  }
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j["matrix"]) rows.push_back(rational_vector_from_json(r));
  AffineMap m(std::move(rows), rational_vector_from_json(j["offset"]));
  if (j.contains("domain_dim") && j["domain_dim"].get<std::size_t>() != m.domain_dim) {
    throw InputError("declared domain_dim disagrees with matrix");
  }
  if (j.contains("codomain_dim") && j["codomain_dim"].get<std::size_t>() != m.codomain_dim) {
    throw InputError("declared codomain_dim disagrees with matrix");
  }
  return m;
}

std::string format_polynomial(const Polynomial& p, bool zero_based) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest degree terms first reads more naturally.
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    bool unit = true;
    for (auto v : e) unit = unit && v == 0;
    if (mag != 1 || unit) os << to_string(mag);
    bool need_star = mag != 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << "*";
      os << "X" << (zero_based ? i : i + 1);
      if (e[i] > 1) os << "^" << e[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

}  // namespace semialg
