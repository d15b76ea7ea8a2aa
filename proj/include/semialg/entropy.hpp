#pragma once
//
// Covering numbers of finite samples of real varieties in the unit ball and
// the epsilon-entropy upper bounds they are compared against. All logs are
// base 2, evaluated in 256-bit MPFR and rounded to double.
//

#include <cstddef>
#include <vector>

#include "semialg/polycore.hpp"

namespace semialg {

class PointCloud {
 public:
  PointCloud() = default;
  // Throws InputError when a point has the wrong length or norm^2 > 1.
  PointCloud(std::size_t ambient_dim, std::vector<std::vector<Rational>> points);

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<std::vector<Rational>>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::size_t dim_ = 0;
  std::vector<std::vector<Rational>> points_;
};

// n rational points exactly on the unit circle, at the images of
// t = tan(theta/2) (rounded to 2^-30) for equally spaced angles theta.
PointCloud circle_cloud(std::size_t n);

struct Cover {
  // Indices into the cloud.
  std::vector<std::size_t> centers;
  std::size_t count() const { return centers.size(); }
};

// Greedy set cover by closed eps-balls centred at cloud points: repeatedly
// take the uncovered point whose ball holds the most uncovered points
// (lowest index on ties). Every point ends within eps of a center and
// centers are pairwise more than eps apart.
Cover greedy_cover(const PointCloud& cloud, const Rational& eps);

// Exact checks of the two properties above.
bool is_cover(const PointCloud& cloud, const std::vector<std::size_t>& centers, const Rational& eps);
bool is_separated(const PointCloud& cloud, const std::vector<std::size_t>& centers, const Rational& eps);

// p log(1/eps) + C p (log D + log N)
double entropy_bound(const Rational& p, const Rational& D, const Rational& N, const Rational& eps,
                     const Rational& C);
// n log(1/eps) + log K + C n log N
double zk_bound(const Rational& n, const BigInt& K, const Rational& N, const Rational& eps,
                const Rational& C);
// The component bound for a (D, p) variety, the K of the bound above.
BigInt zk_default_components(unsigned long D, unsigned long p);

double log2_of(const BigInt& z);

Json to_json(const PointCloud& c);
PointCloud point_cloud_from_json(const Json& j);

}  // namespace semialg
