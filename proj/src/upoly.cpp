#include "semialg/upoly.hpp"

#include <algorithm>

#include "semialg/errors.hpp"

namespace semialg {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::from(const Polynomial& p) {
  if (p.nvars() != 1) throw InputError("univariate polynomial required (nvars = 1)");
  std::vector<Rational> c(static_cast<std::size_t>(std::max(p.total_degree() + 1, 0)));
  for (const auto& [e, v] : p.terms()) c[e[0]] = v;
  return UPoly(std::move(c));
}

Polynomial UPoly::to_polynomial() const {
  Polynomial p(1);
  for (std::size_t k = 0; k < c_.size(); ++k) p.add_term({static_cast<std::uint32_t>(k)}, c_[k]);
  return p;
}

Rational UPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / leading();
  return *this * inv;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) + b.coeff(k);
  return UPoly(std::move(c));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(k) - b.coeff(k);
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const Rational& s) {
  std::vector<Rational> c = a.c_;
  for (auto& v : c) v *= s;
  return UPoly(std::move(c));
}

UPoly UPoly::operator-() const { return *this * Rational(-1); }

DivMod divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational inv = 1 / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    Rational f = rem[static_cast<std::size_t>(k)] * inv;
    if (f == 0) continue;
    quo[static_cast<std::size_t>(k - db)] = f;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k - db + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(quo)), UPoly(std::move(rem))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a.monic();
  UPoly y = b.monic();
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x;
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UPoly g = gcd(p, p.derivative());
  return divmod(p, g).quotient.monic();
}

Rational root_bound(const UPoly& p) {
  if (p.degree() <= 0) return Rational(1);
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading());
    if (r > m) m = r;
  }
  Rational bound = 1 + m;
  Rational b = 1;
  while (b <= bound) b *= 2;
  return b;
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

}  // namespace

Rational resultant(const UPoly& a, const UPoly& b, int m, int n) {
  if (m < a.degree() || n < b.degree()) throw InputError("formal degree below actual degree");
  if (m == 0 && n == 0) return Rational(1);
  const std::size_t size = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rational>> syl(size, std::vector<Rational>(size));
  // Rows hold coefficients from the leading one down.
  for (int r = 0; r < n; ++r) {
    for (int k = 0; k <= m; ++k) {
      syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] =
          a.coeff(static_cast<std::size_t>(m - k));
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int k = 0; k <= n; ++k) {
      syl[static_cast<std::size_t>(n + r)][static_cast<std::size_t>(r + k)] =
          b.coeff(static_cast<std::size_t>(n - k));
    }
  }
  return determinant(std::move(syl));
}

UPoly slice_at_x(const Polynomial& q, const Rational& x0) {
  if (q.nvars() != 2) throw InputError("bivariate polynomial required");
  std::vector<Rational> c(static_cast<std::size_t>(std::max(q.degree_in(1) + 1, 0)));
  std::vector<Rational> xp{Rational(1)};
  for (const auto& [e, v] : q.terms()) {
    while (xp.size() <= e[0]) xp.push_back(xp.back() * x0);
    c[e[1]] += v * xp[e[0]];
  }
  return UPoly(std::move(c));
}

UPoly as_univariate_in(const Polynomial& q, std::size_t var) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(q.degree_in(var) + 1, 0)));
  for (const auto& [e, v] : q.terms()) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var && e[i] != 0) throw InputError("polynomial depends on another variable");
    }
    c[e[var]] += v;
  }
  return UPoly(std::move(c));
}

UPoly resultant_in_y(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != 2 || b.nvars() != 2) throw InputError("bivariate polynomials required");
  const int m = std::max(a.degree_in(1), 0);
  const int n = std::max(b.degree_in(1), 0);
  const int bound = std::max(a.total_degree(), 0) * std::max(b.total_degree(), 0);
  const int npts = bound + 1;
  std::vector<Rational> xs, ys;
  for (int k = 0; k < npts; ++k) {
    Rational x0(k);
    xs.push_back(x0);
    ys.push_back(resultant(slice_at_x(a, x0), slice_at_x(b, x0), m, n));
  }
  // Newton divided differences.
  std::vector<Rational> coef = ys;
  for (int j = 1; j < npts; ++j) {
    for (int i = npts - 1; i >= j; --i) {
      coef[static_cast<std::size_t>(i)] =
          (coef[static_cast<std::size_t>(i)] - coef[static_cast<std::size_t>(i - 1)]) /
          (xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(i - j)]);
    }
  }
  UPoly result = UPoly::constant(coef.back());
  for (int i = npts - 2; i >= 0; --i) {
    result = result * UPoly({-xs[static_cast<std::size_t>(i)], Rational(1)}) +
             UPoly::constant(coef[static_cast<std::size_t>(i)]);
  }
  return result;
}

}  // namespace semialg
