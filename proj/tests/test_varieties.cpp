#include <doctest.h>

#include <array>

#include "helpers.hpp"
#include "semialg/errors.hpp"
#include "semialg/realroots.hpp"
#include "semialg/varieties.hpp"

using namespace semialg;
using namespace testing_helpers;

namespace {

VarietySpec circle_hypersurface(std::size_t declared) {
  Polynomial c = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1) - cst(2, 1);
  return make_hypersurface(c, declared);
}

VarietySpec twisted_cubic() {
  ParamCurve c;
  Polynomial t = var(1, 0);
  c.numerators = {t, t * t, t * t * t};
  return make_param_curve(c, 3);
}

VarietySpec four_lines() {
  std::vector<AffineMap> lines;
  for (int k = 0; k < 4; ++k) {
    // parallel lines y = k in the plane
    lines.emplace_back(std::vector<std::vector<Rational>>{{1}, {0}}, std::vector<Rational>{0, k});
  }
  return make_affine_union(lines, 1);
}

}  // namespace

TEST_CASE("bezout_degree examples") {
  std::array<unsigned, 2> a{2, 3};
  CHECK(bezout_degree(a) == 6);
  std::array<unsigned, 3> b{1, 1, 1};
  CHECK(bezout_degree(b) == 1);
  CHECK(bezout_degree(std::span<const unsigned>{}) == 1);
  std::array<unsigned, 2> c{2, 2};
  CHECK(bezout_degree(c) == 4);
}

TEST_CASE("two conics attain the Bezout bound") {
  Polynomial circle = var(2, 0) * var(2, 0) + var(2, 1) * var(2, 1) - cst(2, 4);
  Polynomial hyperbola = var(2, 0) * var(2, 1) - cst(2, 1);
  UPoly r = resultant_in_y(circle, hyperbola);
  CHECK(r.degree() == 4);
  // Each real x-root gives exactly one point since y = 1/x on the hyperbola.
  CHECK(sturm_count(r, -10, 10) == 4);
  std::array<unsigned, 2> degs{2, 2};
  CHECK(bezout_degree(degs) == 4);
}

TEST_CASE("bezout_degree is multiplicative and permutation invariant") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<unsigned> d;
    for (int i = 0; i < 4; ++i) d.push_back(1 + static_cast<unsigned>(rng.below(9)));
    std::vector<unsigned> rev(d.rbegin(), d.rend());
    CHECK(bezout_degree(d) == bezout_degree(rev));
    std::vector<unsigned> head(d.begin(), d.begin() + 2), tail(d.begin() + 2, d.end());
    CHECK(bezout_degree(d) == bezout_degree(head) * bezout_degree(tail));
  }
}

TEST_CASE("degree_by_slicing examples") {
  CHECK(degree_by_slicing(circle_hypersurface(2), 5, 1) == 2);
  CHECK(degree_by_slicing(twisted_cubic(), 5, 1) == 3);
  CHECK(degree_by_slicing(four_lines(), 5, 1) == 4);
  CHECK(degree_by_slicing(unit_circle(), 5, 1) == 2);
}

TEST_CASE("degree_by_slicing errors") {
  CHECK_THROWS_AS(degree_by_slicing(circle_hypersurface(3), 5, 1), InconsistencyError);
  CHECK_THROWS_AS(degree_by_slicing(make_full_space(2), 5, 1), UnsupportedError);
}

TEST_CASE("degree_by_slicing is seed stable") {
  for (std::uint64_t seed : {1u, 2u, 99u, 12345u}) {
    CHECK(degree_by_slicing(circle_hypersurface(2), 3, seed) == 2);
    CHECK(degree_by_slicing(twisted_cubic(), 3, seed) == 3);
    CHECK(degree_by_slicing(unit_circle(), 3, seed) == 2);
    CHECK(degree_by_slicing(four_lines(), 3, seed) == 4);
  }
}

TEST_CASE("hypersurface slices have full degree") {
  for (unsigned d = 1; d <= 4; ++d) {
    VarietySpec v = make_hypersurface(generic_poly(3, d, 10 + d), d);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      REQUIRE(degree_by_slicing(v, 1, seed) == d);
    }
  }
}

TEST_CASE("validate examples") {
  ValidationReport ok = validate(circle_hypersurface(2));
  CHECK(ok.pass);
  CHECK(ok.reasons.empty());
  CHECK(validate(unit_circle()).pass);

  ValidationReport bad = validate(circle_hypersurface(3));
  CHECK(!bad.pass);
  REQUIRE(!bad.reasons.empty());
  bool mentions_degree = false;
  for (const auto& r : bad.reasons) mentions_degree |= r.find("degree") != std::string::npos;
  CHECK(mentions_degree);

  Polynomial cyl = var(3, 0) * var(3, 0) + var(3, 1) * var(3, 1) - cst(3, 1);
  VarietySpec ci{CompleteIntersection{{cyl, var(3, 2)}}, 3, 2, 2};
  ValidationReport ci_bad = validate(ci);
  CHECK(!ci_bad.pass);  // two equations in 3-space leave dimension 1
  ci.declared_dim = 1;
  CHECK(validate(ci).pass);
}

TEST_CASE("affine union invariants") {
  VarietySpec v = four_lines();
  CHECK(validate(v).pass);
  v.declared_deg = 5;
  CHECK(!validate(v).pass);

  AffineMap a({{1}, {0}}, {0, 0});
  AffineMap b({{0}, {1}}, {3, 0});
  AffineMap c({{1}, {0}}, {0, 1});
  CHECK(affine_images_intersect(a, b));
  CHECK(!affine_images_intersect(a, c));
}

TEST_CASE("variety JSON round-trip") {
  for (const VarietySpec& v : {circle_hypersurface(2), twisted_cubic(), four_lines(), unit_circle(),
                               make_full_space(3)}) {
    std::string text = to_json(v).dump();
    VarietySpec back = variety_from_json(Json::parse(text));
    CHECK(to_json(back).dump() == text);
    CHECK(back.kind_name() == v.kind_name());
  }
  CHECK_THROWS_AS(variety_from_json(Json::parse(R"({"kind":"torus"})")), InputError);
}
