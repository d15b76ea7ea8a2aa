#include <doctest.h>

#include <bit>
#include <chrono>
#include <cmath>

#include "helpers.hpp"
#include "semialg/entropy.hpp"
#include "semialg/errors.hpp"

using namespace semialg;
using namespace testing_helpers;

namespace {

// Smallest cover by eps-balls centred at cloud points, by exhaustion.
std::size_t minimal_cover(const PointCloud& c, const Rational& eps) {
  const std::size_t n = c.size();
  std::size_t best = n;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    auto k = static_cast<std::size_t>(std::popcount(mask));
    if (k >= best) continue;
    std::vector<std::size_t> centers;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) centers.push_back(i);
    if (is_cover(c, centers, eps)) best = k;
  }
  return best;
}

PointCloud random_cloud(Rng& rng, std::size_t n) {
  std::vector<std::vector<Rational>> pts;
  while (pts.size() < n) {
    Rational x = rng.dyadic(6), y = rng.dyadic(6);
    if (x * x + y * y <= 1) pts.push_back({x, y});
  }
  return PointCloud(2, std::move(pts));
}

}  // namespace

TEST_CASE("point clouds") {
  CHECK_THROWS_AS(PointCloud(2, {{Rational(1), Rational(1)}}), InputError);
  CHECK_THROWS_AS(PointCloud(2, {{Rational(0)}}), InputError);
  PointCloud c = circle_cloud(100);
  CHECK(c.size() == 100);
  for (const auto& p : c.points()) CHECK(p[0] * p[0] + p[1] * p[1] == 1);
  CHECK(to_json(point_cloud_from_json(to_json(c))).dump() == to_json(c).dump());
}

TEST_CASE("greedy_cover examples") {
  CHECK(greedy_cover(PointCloud(2, {}), q("1/10")).count() == 0);
  CHECK(greedy_cover(PointCloud(2, {{q("1/3"), q("1/4")}}), q("1/100")).count() == 1);
  // Two points 3 eps apart.
  PointCloud two(1, {{Rational(0)}, {q("3/10")}});
  CHECK(greedy_cover(two, q("1/10")).count() == 2);
  // Distance exactly eps: one closed ball suffices.
  PointCloud touch(1, {{Rational(0)}, {q("1/10")}});
  CHECK(greedy_cover(touch, q("1/10")).count() == 1);
  CHECK_THROWS_AS(greedy_cover(two, Rational(0)), InputError);
}

TEST_CASE("greedy cover is valid and no smaller than the optimum") {
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    PointCloud c = random_cloud(rng, 4 + rng.below(9));
    Rational eps = Rational(1 + static_cast<long>(rng.below(6))) / 8;
    Cover g = greedy_cover(c, eps);
    CHECK(is_cover(c, g.centers, eps));
    CHECK(is_separated(c, g.centers, eps));
    CHECK(g.count() >= minimal_cover(c, eps));
  }
}

TEST_CASE("circle sample covering counts") {
  PointCloud c = circle_cloud(1000);
  Cover g = greedy_cover(c, q("1/10"));
  CHECK(g.count() >= 28);
  CHECK(g.count() <= 40);
  CHECK(is_cover(c, g.centers, q("1/10")));
  CHECK(is_separated(c, g.centers, q("1/10")));
  // Halving eps roughly doubles the count.
  Cover h = greedy_cover(c, q("1/20"));
  CHECK(h.count() >= 2 * g.count() - 4);
}

TEST_CASE("entropy_bound") {
  CHECK(entropy_bound(1, 2, 2, q("1/10"), 8) == doctest::Approx(std::log2(10.0) + 16).epsilon(1e-12));
  CHECK(entropy_bound(1, 2, 2, q("1/10"), 8) == doctest::Approx(19.3219).epsilon(1e-5));
  CHECK(entropy_bound(2, 3, 5, 1, q("3/2")) == doctest::Approx(3 * (std::log2(3.0) + std::log2(5.0))));
  CHECK(entropy_bound(2, 3, 10, q("1/7"), q("3/2")) - entropy_bound(2, 3, 5, q("1/7"), q("3/2")) ==
        doctest::Approx(3.0));
  CHECK_THROWS_AS(entropy_bound(0, 2, 2, q("1/10"), 8), InputError);
}

TEST_CASE("zk_bound") {
  CHECK(zk_bound(1, 1, 2, q("1/2"), 1) == doctest::Approx(2.0));
  CHECK(zk_bound(0, 1000, 7, q("1/9"), 5) == doctest::Approx(std::log2(1000.0)));
  BigInt K = zk_default_components(2, 1);
  CHECK(K == 128);
  CHECK(log2_of(K) == 7.0);
  CHECK(zk_bound(1, K, 2, q("1/10"), 1) == doctest::Approx(std::log2(10.0) + 8));
  CHECK_THROWS_AS(zk_bound(1, 0, 2, q("1/2"), 1), InputError);
}
