#pragma once
//
// Relative rank of vectors with respect to a finite generating set, by
// breadth-first search over sums (vector spaces) or left-associated
// products (algebras given by structure constants). Also the rank and
// quantum-circuit lower-bound calculators and the oracle unitary U_f.
//

#include <cstdint>
#include <optional>
#include <vector>

#include "semialg/polycore.hpp"

namespace semialg {

using Vector = std::vector<Rational>;

// e_i * e_j = sum_k c[i][j][k] e_k
class AlgebraTable {
 public:
  AlgebraTable() = default;
  // Throws InputError on a ragged tensor, or when `identity` is given and
  // fails identity * e_i = e_i * identity = e_i for some basis vector.
  AlgebraTable(std::vector<std::vector<Vector>> constants, std::optional<Vector> identity = {});

  std::size_t dim() const { return c_.size(); }
  const std::vector<std::vector<Vector>>& constants() const { return c_; }
  const std::optional<Vector>& identity() const { return identity_; }
  Vector multiply(const Vector& a, const Vector& b) const;

 private:
  std::vector<std::vector<Vector>> c_;
  std::optional<Vector> identity_;
};

// m x m matrices, basis E_ij at index i*m + j, so a flattened row-major
// matrix is its coordinate vector.
AlgebraTable matrix_algebra(std::size_t m);

enum class RankMode { additive, multiplicative };

struct RankInstance {
  std::size_t ambient_dim = 0;
  std::vector<Vector> delta;
  RankMode mode = RankMode::additive;
  // Required in multiplicative mode, dim == ambient_dim.
  std::optional<AlgebraTable> algebra;
  std::size_t budget = 5;
  // Cap on the number of distinct elements the search may hold.
  std::uint64_t max_elements = std::uint64_t{1} << 22;

  // Throws InputError on empty delta, length mismatch or a missing table.
  void check() const;
};

// Least t <= budget with target a sum (or left-associated product
// ((d1 d2) d3)...) of t elements of delta; nullopt past the budget. The zero
// vector has additive rank 0. Throws BudgetError past max_elements.
std::optional<std::size_t> relative_rank(const RankInstance& inst, const Vector& target);

// Maximum over targets; 0 for an empty list; nullopt if any target is.
std::optional<std::size_t> rank_of_set(const RankInstance& inst, const std::vector<Vector>& targets);

// Number of elements whose rank is exactly t, for t = 1..budget.
std::vector<std::size_t> new_elements_per_level(const RankInstance& inst);

enum class RankBoundMode { vector, algebra };

struct RankBound {
  double value = 0;
  BigInt floor = 0;
};

// log card / (c (p (log delta_deg + log s [+ log log card]) + log D)), base 2.
// Needs card >= 2; throws InputError when the denominator vanishes.
RankBound rank_lower_bound(const BigInt& card, unsigned long p, unsigned long D, unsigned long s,
                           unsigned long delta_deg, RankBoundMode mode, const Rational& c);

enum class QuantumVariant { stringent, relaxed };

// C 2^n / (p n + log D), or C 2^n / (p (n + t) + log D) for the relaxed form.
double quantum_bound(unsigned long n, unsigned long p, const BigInt& D, unsigned long t,
                     const Rational& C, QuantumVariant variant);

using PermutationMatrix = std::vector<std::vector<int>>;

// |x>|y> -> |x>|y xor f(x)> on 2^(n+1) basis states with index 2x + y;
// truth_table[x] = f(x). Column (x, y) has its 1 in row (x, y xor f(x)).
PermutationMatrix build_uf(unsigned n, const std::vector<bool>& truth_table);
Vector flatten(const PermutationMatrix& m);

Json to_json(const AlgebraTable& a);
AlgebraTable algebra_table_from_json(const Json& j);
Json to_json(const RankInstance& inst);
RankInstance rank_instance_from_json(const Json& j);

}  // namespace semialg
