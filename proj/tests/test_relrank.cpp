#include <doctest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "semialg/errors.hpp"
#include "semialg/relrank.hpp"

using namespace semialg;
using namespace testing_helpers;

namespace {

Vector vec(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

RankInstance axes() {
  RankInstance inst;
  inst.ambient_dim = 2;
  inst.delta = {vec({1, 0}), vec({-1, 0}), vec({0, 1}), vec({0, -1})};
  return inst;
}

// Level sets recomputed from scratch, without pruning across levels.
std::optional<std::size_t> oracle_rank(const RankInstance& inst, const Vector& target) {
  bool zero = true;
  for (const auto& x : target) zero = zero && x == 0;
  if (inst.mode == RankMode::additive && zero) return 0;
  std::set<Vector> level(inst.delta.begin(), inst.delta.end());
  for (std::size_t t = 1; t <= inst.budget; ++t) {
    if (level.count(target)) return t;
    std::set<Vector> next;
    for (const auto& x : level) {
      for (const auto& d : inst.delta) {
        if (inst.mode == RankMode::additive) {
          Vector y(x);
          for (std::size_t i = 0; i < y.size(); ++i) y[i] += d[i];
          next.insert(y);
        } else {
          next.insert(inst.algebra->multiply(x, d));
        }
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

Vector random_vector(Rng& rng, std::size_t n, long range) {
  Vector v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(static_cast<long>(rng.below(2 * range + 1)) - range);
  return v;
}

// A target that is often reachable: a random word in delta.
Vector random_word(Rng& rng, const RankInstance& inst) {
  Vector v = inst.delta[rng.below(inst.delta.size())];
  std::size_t len = rng.below(inst.budget + 1);
  for (std::size_t k = 0; k < len; ++k) {
    const Vector& d = inst.delta[rng.below(inst.delta.size())];
    if (inst.mode == RankMode::additive) {
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += d[i];
    } else {
      v = inst.algebra->multiply(v, d);
    }
  }
  return v;
}

PermutationMatrix identity4() {
  PermutationMatrix m(4, std::vector<int>(4, 0));
  for (int i = 0; i < 4; ++i) m[i][i] = 1;
  return m;
}

PermutationMatrix product(const PermutationMatrix& a, const PermutationMatrix& b) {
  const std::size_t n = a.size();
  PermutationMatrix r(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

}  // namespace

TEST_CASE("additive rank examples") {
  RankInstance inst = axes();
  CHECK(relative_rank(inst, vec({1, 1})) == 2);
  CHECK(relative_rank(inst, vec({2, 0})) == 2);
  CHECK(relative_rank(inst, vec({1, 0})) == 1);
  CHECK(relative_rank(inst, vec({0, 0})) == 0);
  CHECK(relative_rank(inst, vec({3, 3})) == std::nullopt);
  inst.budget = 6;
  CHECK(relative_rank(inst, vec({3, 3})) == 6);
  CHECK_THROWS_AS(relative_rank(inst, vec({1})), InputError);
}

TEST_CASE("rank of sets") {
  RankInstance inst = axes();
  CHECK(rank_of_set(inst, {vec({1, 0}), vec({0, -1})}) == 1);
  CHECK(rank_of_set(inst, {vec({1, 0}), vec({1, 1})}) == 2);
  CHECK(rank_of_set(inst, {vec({-1, 1})}) == relative_rank(inst, vec({-1, 1})));
  CHECK(rank_of_set(inst, {}) == 0);
  CHECK(rank_of_set(inst, {vec({1, 0}), vec({9, 9})}) == std::nullopt);
}

TEST_CASE("multiplicative rank in the 2x2 matrix algebra") {
  RankInstance inst;
  inst.ambient_dim = 4;
  inst.mode = RankMode::multiplicative;
  inst.algebra = matrix_algebra(2);
  Vector swap = vec({0, 1, 1, 0}), diag = vec({1, 0, 0, -1});
  inst.delta = {swap, diag};
  CHECK(relative_rank(inst, swap) == 1);
  CHECK(relative_rank(inst, vec({1, 0, 0, 1})) == 2);
  // swap * diag = [[0,-1],[1,0]]
  CHECK(relative_rank(inst, vec({0, -1, 1, 0})) == 2);
  CHECK(relative_rank(inst, vec({-1, 0, 0, -1})) == 4);
  CHECK(relative_rank(inst, vec({2, 0, 0, 2})) == std::nullopt);
}

TEST_CASE("algebra tables") {
  AlgebraTable m = matrix_algebra(2);
  CHECK(m.multiply(vec({1, 2, 3, 4}), vec({5, 6, 7, 8})) == vec({19, 22, 43, 50}));
  REQUIRE(m.identity().has_value());
  // A wrong identity is rejected.
  CHECK_THROWS_AS(AlgebraTable(m.constants(), vec({1, 0, 0, 0})), InputError);
  CHECK_THROWS_AS(AlgebraTable({{vec({1})}, {vec({1})}}), InputError);
  CHECK(to_json(algebra_table_from_json(to_json(m))).dump() == to_json(m).dump());
}

TEST_CASE("BFS agrees with the level oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    RankInstance inst;
    inst.ambient_dim = 1 + rng.below(4);
    inst.budget = 1 + rng.below(5);
    std::size_t size = 1 + rng.below(8);
    for (std::size_t k = 0; k < size; ++k) inst.delta.push_back(random_vector(rng, inst.ambient_dim, 2));
    for (int k = 0; k < 4; ++k) {
      Vector t = k % 2 ? random_word(rng, inst) : random_vector(rng, inst.ambient_dim, 3);
      CHECK(relative_rank(inst, t) == oracle_rank(inst, t));
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    RankInstance inst;
    inst.mode = RankMode::multiplicative;
    inst.ambient_dim = 1 + rng.below(4);
    const std::size_t n = inst.ambient_dim;
    std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n));
    for (auto& row : c)
      for (auto& v : row) v = random_vector(rng, n, 1);
    inst.algebra = AlgebraTable(std::move(c));
    inst.budget = 1 + rng.below(4);
    std::size_t size = 1 + rng.below(8);
    for (std::size_t k = 0; k < size; ++k) inst.delta.push_back(random_vector(rng, n, 1));
    for (int k = 0; k < 4; ++k) {
      Vector t = k % 2 ? random_word(rng, inst) : random_vector(rng, n, 1);
      CHECK(relative_rank(inst, t) == oracle_rank(inst, t));
    }
  }
}

TEST_CASE("enlarging the generating set never increases rank") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    RankInstance small;
    small.ambient_dim = 2;
    small.budget = 4;
    for (int k = 0; k < 3; ++k) small.delta.push_back(random_vector(rng, 2, 2));
    RankInstance big = small;
    big.delta.push_back(random_vector(rng, 2, 2));
    for (int k = 0; k < 10; ++k) {
      Vector t = random_vector(rng, 2, 4);
      auto a = relative_rank(small, t), b = relative_rank(big, t);
      if (a) {
        REQUIRE(b.has_value());
        CHECK(*b <= *a);
      }
    }
  }
}

TEST_CASE("rank_lower_bound") {
  RankBound v = rank_lower_bound(BigInt(1) << 16, 1, 2, 64, 2, RankBoundMode::vector, 1);
  CHECK(v.value == 2.0);
  CHECK(v.floor == 2);
  RankBound a = rank_lower_bound(BigInt(1) << 16, 1, 2, 64, 2, RankBoundMode::algebra, 1);
  CHECK(a.value == doctest::Approx(4.0 / 3));
  CHECK(a.floor == 1);
  CHECK(rank_lower_bound(2, 1, 2, 1, 1, RankBoundMode::vector, 1).value == 1.0);
  CHECK_THROWS_AS(rank_lower_bound(2, 1, 1, 1, 1, RankBoundMode::vector, 1), InputError);
  CHECK_THROWS_AS(rank_lower_bound(1, 1, 2, 1, 1, RankBoundMode::vector, 1), InputError);
}

TEST_CASE("quantum_bound") {
  CHECK(quantum_bound(10, 16, 45, 0, 1, QuantumVariant::stringent) ==
        doctest::Approx(1024 / (160 + std::log2(45.0))));
  CHECK(quantum_bound(10, 16, 45, 0, 1, QuantumVariant::stringent) == doctest::Approx(6.188).epsilon(1e-3));
  CHECK(quantum_bound(5, 3, 1, 0, 2, QuantumVariant::stringent) == doctest::Approx(64.0 / 15));
  CHECK(quantum_bound(7, 2, 9, 0, 1, QuantumVariant::relaxed) == quantum_bound(7, 2, 9, 0, 1, QuantumVariant::stringent));
  CHECK(quantum_bound(7, 2, 1, 3, 1, QuantumVariant::relaxed) == doctest::Approx(128.0 / 20));
  CHECK_THROWS_AS(quantum_bound(0, 2, 1, 0, 1, QuantumVariant::relaxed), InputError);
}

TEST_CASE("build_uf") {
  CHECK(build_uf(1, {false, false}) == identity4());
  PermutationMatrix cnot = build_uf(1, {false, true});
  // Column (x, y) -> row (x, y xor x).
  CHECK(cnot[0][0] == 1);
  CHECK(cnot[1][1] == 1);
  CHECK(cnot[3][2] == 1);
  CHECK(cnot[2][3] == 1);
  CHECK_THROWS_AS(build_uf(1, {true}), InputError);

  for (unsigned n = 1; n <= 2; ++n) {
    const std::size_t inputs = std::size_t{1} << n;
    std::set<PermutationMatrix> all;
    for (std::size_t f = 0; f < (std::size_t{1} << inputs); ++f) {
      std::vector<bool> table(inputs);
      for (std::size_t x = 0; x < inputs; ++x) table[x] = (f >> x) & 1;
      PermutationMatrix u = build_uf(n, table);
      PermutationMatrix id(u.size(), std::vector<int>(u.size(), 0));
      for (std::size_t i = 0; i < u.size(); ++i) id[i][i] = 1;
      CHECK(product(u, u) == id);
      all.insert(u);
    }
    CHECK(all.size() == (std::size_t{1} << inputs));
  }
}

TEST_CASE("counting skeleton for one-qubit oracles") {
  // 16 signed permutation gates on 2 qubits (index 2x + y), identity included.
  auto perm = [](std::vector<int> image, std::vector<int> signs) {
    PermutationMatrix m(4, std::vector<int>(4, 0));
    for (int c = 0; c < 4; ++c) m[image[c]][c] = signs[c];
    return m;
  };
  std::vector<PermutationMatrix> gates = {
      perm({0, 1, 2, 3}, {1, 1, 1, 1}),   perm({2, 3, 0, 1}, {1, 1, 1, 1}),   perm({1, 0, 3, 2}, {1, 1, 1, 1}),
      perm({0, 1, 3, 2}, {1, 1, 1, 1}),   perm({0, 3, 2, 1}, {1, 1, 1, 1}),   perm({0, 2, 1, 3}, {1, 1, 1, 1}),
      perm({0, 1, 2, 3}, {1, 1, -1, -1}), perm({0, 1, 2, 3}, {1, -1, 1, -1}), perm({0, 1, 2, 3}, {1, 1, 1, -1}),
      perm({3, 2, 1, 0}, {1, 1, 1, 1}),   perm({0, 1, 2, 3}, {1, -1, -1, 1}), perm({1, 0, 2, 3}, {1, 1, 1, 1}),
      perm({2, 1, 0, 3}, {1, 1, 1, 1}),   perm({1, 2, 3, 0}, {1, 1, 1, 1}),   perm({0, 1, 2, 3}, {-1, 1, 1, 1}),
      perm({3, 1, 2, 0}, {1, 1, 1, 1})};
  RankInstance inst;
  inst.ambient_dim = 16;
  inst.mode = RankMode::multiplicative;
  inst.algebra = matrix_algebra(4);
  inst.budget = 4;
  for (const auto& g : gates) inst.delta.push_back(flatten(g));
  REQUIRE(std::set<Vector>(inst.delta.begin(), inst.delta.end()).size() == 16);

  std::vector<std::size_t> fresh = new_elements_per_level(inst);
  std::size_t cumulative = 0, cap = 1;
  for (std::size_t t = 0; t < fresh.size(); ++t) {
    cumulative += fresh[t];
    cap *= inst.delta.size();
    CHECK(cumulative <= cap);
  }
  std::size_t reached = 0;
  for (std::size_t f = 0; f < 4; ++f) {
    auto r = relative_rank(inst, flatten(build_uf(1, {bool(f & 1), bool(f & 2)})));
    if (r) ++reached;
  }
  CHECK(reached == 4);
}

TEST_CASE("rank instance JSON") {
  RankInstance inst = axes();
  RankInstance back = rank_instance_from_json(to_json(inst));
  CHECK(back.delta == inst.delta);
  CHECK(back.budget == inst.budget);
  Json m{{"ambient_dim", 4}, {"mode", "multiplicative"}, {"delta", {{"0", "1", "1", "0"}}}, {"algebra", {{"matrix_algebra", 2}}}};
  CHECK(relative_rank(rank_instance_from_json(m), vec({1, 0, 0, 1})) == 2);
  CHECK_THROWS_AS(rank_instance_from_json(Json{{"ambient_dim", 2}, {"delta", Json::array()}}), InputError);
  CHECK_THROWS_AS(rank_instance_from_json(Json{{"ambient_dim", 4}, {"mode", "multiplicative"}, {"delta", {{"1", "0", "0", "1"}}}}),
                  InputError);
}
