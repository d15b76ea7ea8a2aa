#pragma once
//
// Algebraic computation trees: computation vertices Y_v = a * b, three-way
// branches on the sign of an operand, and YES/NO leaves.
//

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "semialg/polycore.hpp"
#include "semialg/regions.hpp"

namespace semialg {

// A constant, input X_i, or the variable of an earlier computation vertex.
struct Operand {
  enum class Kind { constant, input, vertex } kind = Kind::constant;
  Rational value = 0;       // constant
  std::size_t index = 0;    // input index or vertex id
};

enum class ActOp { add, sub, mul };

struct ComputeVertex {
  ActOp op = ActOp::add;
  Operand a, b;
  std::size_t next = 0;
};

struct BranchVertex {
  Operand test;
  std::size_t zero = 0, pos = 0, neg = 0;
};

struct LeafVertex {
  bool yes = false;
};

using ActVertex = std::variant<ComputeVertex, BranchVertex, LeafVertex>;

class ActTree {
 public:
  ActTree() = default;
  // Vertices are indexed by id. Throws InputError unless the graph is a tree
  // rooted at `root`, every vertex is reachable, and vertex operands refer to
  // computation vertices strictly above their user.
  ActTree(std::size_t input_arity, std::vector<ActVertex> vertices, std::size_t root);

  std::size_t input_arity() const { return arity_; }
  const std::vector<ActVertex>& vertices() const { return vertices_; }
  std::size_t root() const { return root_; }
  std::vector<std::size_t> leaves() const;
  // Root-to-vertex path, both ends included.
  const std::vector<std::size_t>& path_to(std::size_t v) const { return paths_.at(v); }
  // Number of edges on the longest root-to-leaf path.
  std::size_t height() const;

 private:
  std::size_t arity_ = 0;
  std::vector<ActVertex> vertices_;
  std::size_t root_ = 0;
  std::vector<std::vector<std::size_t>> paths_;
};

struct SimulationResult {
  bool yes = false;
  std::size_t leaf = 0;
  std::vector<std::size_t> path;
  // Value of every computation vertex on the path, keyed by vertex id.
  std::map<std::size_t, Rational> trace;
};

SimulationResult simulate(const ActTree& tree, const std::vector<Rational>& x);

// Variables X_1..X_N, then one Y per computation vertex on the path in path
// order. Polynomials in path order: Y_v - (a * b) with sign 0 for each
// computation vertex, the tested operand with the branch sign for each
// branch vertex.
struct LeafSystem {
  std::size_t leaf = 0;
  std::size_t inputs = 0;
  std::vector<std::size_t> compute_vertices;
  PolyFamily family;
  SignVector signs;
};

LeafSystem leaf_system(const ActTree& tree, std::size_t leaf);

// Solves the defining relations for the Y values at x and checks every sign.
bool satisfies(const LeafSystem& ls, const std::vector<Rational>& x);

// Least t with b0 <= 2^t * sign_bound_explicit(D, p + t, max(t, 1), 2).
std::size_t lower_bound_height(const BigInt& b0, unsigned long D, unsigned long p);

ActTree act_tree_from_json(const Json& j);
Json to_json(const ActTree& t);
Json to_json(const SimulationResult& r);
Json to_json(const LeafSystem& ls);

}  // namespace semialg
