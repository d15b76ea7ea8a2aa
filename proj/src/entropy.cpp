#include "semialg/entropy.hpp"

#include <mpfr.h>

#include <cmath>
#include <numbers>

#include "semialg/bounds.hpp"
#include "semialg/errors.hpp"

namespace semialg {

namespace {

constexpr mpfr_prec_t kPrec = 256;

// RAII wrapper around one MPFR value.
class Big {
 public:
  Big() { mpfr_init2(v_, kPrec); mpfr_set_zero(v_, 1); }
  explicit Big(const Rational& q) : Big() { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
  explicit Big(const BigInt& z) : Big() { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  Big(const Big&) = delete;
  Big& operator=(const Big&) = delete;
  ~Big() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

void log2_into(Big& out, Big& x) { mpfr_log2(out.get(), x.get(), MPFR_RNDN); }

void add_log2_scaled(Big& acc, const Rational& scale, Big x) {
  Big l, s(scale);
  log2_into(l, x);
  mpfr_mul(l.get(), l.get(), s.get(), MPFR_RNDN);
  mpfr_add(acc.get(), acc.get(), l.get(), MPFR_RNDN);
}

void require_positive(const Rational& v, const char* name) {
  if (v <= 0) throw InputError(std::string(name) + " must be positive");
}

Rational squared_distance(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Rational d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

// Neighbour test with a floating filter; exact arithmetic decides every
// comparison that lands near the threshold.
class Proximity {
 public:
  Proximity(const PointCloud& cloud, const Rational& eps) : cloud_(cloud), eps2_(eps * eps) {
    eps2_d_ = eps2_.get_d();
    for (const auto& p : cloud.points()) {
      std::vector<double> v;
      for (const auto& c : p) v.push_back(c.get_d());
      approx_.push_back(std::move(v));
    }
  }
  bool within(std::size_t i, std::size_t j) const {
    double s = 0;
    for (std::size_t k = 0; k < approx_[i].size(); ++k) {
      double d = approx_[i][k] - approx_[j][k];
      s += d * d;
    }
    if (s < eps2_d_ * (1 - 1e-9)) return true;
    if (s > eps2_d_ * (1 + 1e-9)) return false;
    return squared_distance(cloud_.points()[i], cloud_.points()[j]) <= eps2_;
  }

 private:
  const PointCloud& cloud_;
  Rational eps2_;
  double eps2_d_ = 0;
  std::vector<std::vector<double>> approx_;
};

}  // namespace

PointCloud::PointCloud(std::size_t ambient_dim, std::vector<std::vector<Rational>> points)
    : dim_(ambient_dim), points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.size() != dim_) throw InputError("point length differs from the ambient dimension");
    Rational n2 = 0;
    for (const auto& c : p) n2 += c * c;
    if (n2 > 1) throw InputError("point lies outside the unit ball");
  }
}

PointCloud circle_cloud(std::size_t n) {
  std::vector<std::vector<Rational>> pts;
  const Rational scale = Rational(BigInt(1) << 30);
  for (std::size_t k = 0; k < n; ++k) {
    double theta = -std::numbers::pi + 2 * std::numbers::pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    Rational t(BigInt(std::lround(std::tan(theta / 2) * std::ldexp(1.0, 30))));
    t /= scale;
    Rational den = 1 + t * t;
    pts.push_back({(1 - t * t) / den, 2 * t / den});
  }
  return PointCloud(2, std::move(pts));
}

Cover greedy_cover(const PointCloud& cloud, const Rational& eps) {
  require_positive(eps, "eps");
  const std::size_t n = cloud.size();
  Proximity near(cloud, eps);
  std::vector<std::vector<std::size_t>> ball(n);
  for (std::size_t i = 0; i < n; ++i) {
    ball[i].push_back(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (near.within(i, j)) {
        ball[i].push_back(j);
        ball[j].push_back(i);
      }
    }
  }
  std::vector<std::size_t> gain(n);
  for (std::size_t i = 0; i < n; ++i) gain[i] = ball[i].size();
  std::vector<bool> covered(n, false);
  std::size_t left = n;
  Cover out;
  while (left > 0) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!covered[i] && (best == n || gain[i] > gain[best])) best = i;
    }
    out.centers.push_back(best);
    for (std::size_t j : ball[best]) {
      if (covered[j]) continue;
      covered[j] = true;
      --left;
      for (std::size_t k : ball[j]) --gain[k];
    }
  }
  return out;
}

bool is_cover(const PointCloud& cloud, const std::vector<std::size_t>& centers, const Rational& eps) {
  const Rational e2 = eps * eps;
  for (const auto& p : cloud.points()) {
    bool hit = false;
    for (auto c : centers) {
      if (squared_distance(p, cloud.points().at(c)) <= e2) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

bool is_separated(const PointCloud& cloud, const std::vector<std::size_t>& centers, const Rational& eps) {
  const Rational e2 = eps * eps;
  for (std::size_t a = 0; a < centers.size(); ++a) {
    for (std::size_t b = a + 1; b < centers.size(); ++b) {
      if (squared_distance(cloud.points().at(centers[a]), cloud.points().at(centers[b])) <= e2) return false;
    }
  }
  return true;
}

double entropy_bound(const Rational& p, const Rational& D, const Rational& N, const Rational& eps,
                     const Rational& C) {
  for (auto [v, name] : {std::pair{&p, "p"}, {&D, "D"}, {&N, "N"}, {&eps, "eps"}, {&C, "C"}}) {
    require_positive(*v, name);
  }
  Big acc;
  add_log2_scaled(acc, p, Big(Rational(1) / eps));
  add_log2_scaled(acc, C * p, Big(D));
  add_log2_scaled(acc, C * p, Big(N));
  return acc.to_double();
}

double zk_bound(const Rational& n, const BigInt& K, const Rational& N, const Rational& eps,
                const Rational& C) {
  if (n < 0) throw InputError("n must be non-negative");
  if (K < 1) throw InputError("K must be at least 1");
  require_positive(N, "N");
  require_positive(eps, "eps");
  require_positive(C, "C");
  Big acc;
  add_log2_scaled(acc, n, Big(Rational(1) / eps));
  add_log2_scaled(acc, 1, Big(K));
  add_log2_scaled(acc, C * n, Big(N));
  return acc.to_double();
}

BigInt zk_default_components(unsigned long D, unsigned long p) { return components_bound(D, p); }

double log2_of(const BigInt& z) {
  if (z < 1) throw InputError("log2 needs a positive integer");
  Big x(z), l;
  log2_into(l, x);
  return l.to_double();
}

Json to_json(const PointCloud& c) {
  Json pts = Json::array();
  for (const auto& p : c.points()) pts.push_back(to_json(std::span<const Rational>(p)));
  return Json{{"ambient_dim", c.ambient_dim()}, {"points", pts}};
}

PointCloud point_cloud_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !json_is_count(j["ambient_dim"]) ||
      !j.contains("points") || !j["points"].is_array()) {
    throw InputError("point cloud JSON needs 'ambient_dim' and 'points'");
  }
  std::vector<std::vector<Rational>> pts;
  for (const auto& p : j["points"]) pts.push_back(rational_vector_from_json(p));
  return PointCloud(j["ambient_dim"].get<std::size_t>(), std::move(pts));
}

}  // namespace semialg
