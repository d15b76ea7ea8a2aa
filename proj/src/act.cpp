#include "semialg/act.hpp"

#include <algorithm>

#include "semialg/bounds.hpp"
#include "semialg/errors.hpp"

namespace semialg {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::size_t> children(const ActVertex& v) {
  return std::visit(overloaded{[](const ComputeVertex& c) { return std::vector<std::size_t>{c.next}; },
                               [](const BranchVertex& b) { return std::vector<std::size_t>{b.zero, b.pos, b.neg}; },
                               [](const LeafVertex&) { return std::vector<std::size_t>{}; }},
                    v);
}

Rational apply(ActOp op, const Rational& a, const Rational& b) {
  switch (op) {
    case ActOp::add: return a + b;
    case ActOp::sub: return a - b;
    case ActOp::mul: return a * b;
  }
  return 0;
}

Polynomial apply(ActOp op, const Polynomial& a, const Polynomial& b) {
  switch (op) {
    case ActOp::add: return a + b;
    case ActOp::sub: return a - b;
    case ActOp::mul: return a * b;
  }
  return a;
}

const char* op_name(ActOp op) {
  switch (op) {
    case ActOp::add: return "+";
    case ActOp::sub: return "-";
    case ActOp::mul: return "*";
  }
  return "?";
}

Json operand_json(const Operand& o) {
  switch (o.kind) {
    case Operand::Kind::constant: return Json{{"const", to_string(o.value)}};
    case Operand::Kind::input: return Json{{"input", o.index}};
    case Operand::Kind::vertex: return Json{{"vertex", o.index}};
  }
  return nullptr;
}

Operand operand_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 1) throw InputError("operand must be one of const, input, vertex");
  Operand o;
  if (j.contains("const")) {
    o.kind = Operand::Kind::constant;
    if (j["const"].is_string()) {
      o.value = parse_rational(j["const"].get<std::string>());
    } else if (j["const"].is_number_integer()) {
      o.value = Rational(BigInt(std::to_string(j["const"].get<long long>())));
    } else {
      throw InputError("constant operand must be an integer or a rational string");
    }
    return o;
  }
  const char* key = j.contains("input") ? "input" : j.contains("vertex") ? "vertex" : nullptr;
  if (!key || !json_is_count(j[key])) throw InputError("operand must be one of const, input, vertex");
  o.kind = key[0] == 'i' ? Operand::Kind::input : Operand::Kind::vertex;
  o.index = j[key].get<std::size_t>();
  return o;
}

std::size_t id_field(const Json& j, const char* key) {
  if (!j.contains(key) || !json_is_count(j[key])) {
    throw InputError(std::string("tree vertex needs a non-negative integer '") + key + "'");
  }
  return j[key].get<std::size_t>();
}

}  // namespace

ActTree::ActTree(std::size_t input_arity, std::vector<ActVertex> vertices, std::size_t root)
    : arity_(input_arity), vertices_(std::move(vertices)), root_(root) {
  const std::size_t n = vertices_.size();
  if (root_ >= n) throw InputError("tree root is not a vertex");
  paths_.assign(n, {});
  std::vector<bool> seen(n, false);
  auto check_operand = [&](const Operand& o, const std::vector<std::size_t>& above) {
    if (o.kind == Operand::Kind::input && o.index >= arity_) throw InputError("operand names a missing input");
    if (o.kind == Operand::Kind::vertex) {
      bool ok = std::find(above.begin(), above.end(), o.index) != above.end() &&
                std::holds_alternative<ComputeVertex>(vertices_[o.index]);
      if (!ok) throw InputError("operand must be a computation vertex above its user");
    }
  };
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> stack{{root_, {}}};
  while (!stack.empty()) {
    auto [v, above] = std::move(stack.back());
    stack.pop_back();
    if (seen[v]) throw InputError("tree vertex has two parents or lies on a cycle");
    seen[v] = true;
    std::visit(overloaded{[&](const ComputeVertex& c) {
                            check_operand(c.a, above);
                            check_operand(c.b, above);
                          },
                          [&](const BranchVertex& b) { check_operand(b.test, above); },
                          [](const LeafVertex&) {}},
               vertices_[v]);
    above.push_back(v);
    paths_[v] = above;
    for (std::size_t c : children(vertices_[v])) {
      if (c >= n) throw InputError("tree edge points to a missing vertex");
      stack.emplace_back(c, above);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw InputError("tree has vertices unreachable from the root");
  }
}

std::vector<std::size_t> ActTree::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (std::holds_alternative<LeafVertex>(vertices_[i])) out.push_back(i);
  }
  return out;
}

std::size_t ActTree::height() const {
  std::size_t h = 0;
  for (auto l : leaves()) h = std::max(h, paths_[l].size() - 1);
  return h;
}

SimulationResult simulate(const ActTree& tree, const std::vector<Rational>& x) {
  if (x.size() != tree.input_arity()) throw InputError("input length differs from the tree arity");
  SimulationResult r;
  auto value = [&](const Operand& o) -> Rational {
    switch (o.kind) {
      case Operand::Kind::constant: return o.value;
      case Operand::Kind::input: return x[o.index];
      case Operand::Kind::vertex: return r.trace.at(o.index);
    }
    return 0;
  };
  std::size_t v = tree.root();
  while (true) {
    r.path.push_back(v);
    const ActVertex& vert = tree.vertices()[v];
    if (const auto* leaf = std::get_if<LeafVertex>(&vert)) {
      r.yes = leaf->yes;
      r.leaf = v;
      return r;
    }
    if (const auto* c = std::get_if<ComputeVertex>(&vert)) {
      r.trace[v] = apply(c->op, value(c->a), value(c->b));
      v = c->next;
    } else {
      const auto& b = std::get<BranchVertex>(vert);
      int s = sign(value(b.test));
      v = s == 0 ? b.zero : (s > 0 ? b.pos : b.neg);
    }
  }
}

LeafSystem leaf_system(const ActTree& tree, std::size_t leaf) {
  if (leaf >= tree.vertices().size() || !std::holds_alternative<LeafVertex>(tree.vertices()[leaf])) {
    throw InputError("not a leaf of the tree");
  }
  const auto& path = tree.path_to(leaf);
  LeafSystem ls;
  ls.leaf = leaf;
  ls.inputs = tree.input_arity();
  for (auto v : path) {
    if (std::holds_alternative<ComputeVertex>(tree.vertices()[v])) ls.compute_vertices.push_back(v);
  }
  const std::size_t nv = ls.inputs + ls.compute_vertices.size();
  std::map<std::size_t, std::size_t> slot;
  for (std::size_t k = 0; k < ls.compute_vertices.size(); ++k) slot[ls.compute_vertices[k]] = ls.inputs + k;
  auto poly = [&](const Operand& o) {
    switch (o.kind) {
      case Operand::Kind::constant: return Polynomial::constant(nv, o.value);
      case Operand::Kind::input: return Polynomial::variable(nv, o.index);
      case Operand::Kind::vertex: return Polynomial::variable(nv, slot.at(o.index));
    }
    return Polynomial(nv);
  };
  std::vector<Polynomial> polys;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const std::size_t v = path[k];
    const ActVertex& vert = tree.vertices()[v];
    if (const auto* c = std::get_if<ComputeVertex>(&vert)) {
      polys.push_back(Polynomial::variable(nv, slot.at(v)) - apply(c->op, poly(c->a), poly(c->b)));
      ls.signs.push_back(0);
    } else if (const auto* b = std::get_if<BranchVertex>(&vert)) {
      const std::size_t next = path[k + 1];
      polys.push_back(poly(b->test));
      ls.signs.push_back(next == b->zero ? 0 : (next == b->pos ? 1 : -1));
    }
  }
  ls.family = PolyFamily(nv, std::move(polys));
  return ls;
}

bool satisfies(const LeafSystem& ls, const std::vector<Rational>& x) {
  if (x.size() != ls.inputs) throw InputError("input length differs from the system's inputs");
  const std::size_t nv = ls.family.nvars();
  std::vector<Rational> point(x);
  point.resize(nv, Rational(0));
  std::size_t next_y = ls.inputs;
  for (std::size_t k = 0; k < ls.family.s(); ++k) {
    const Polynomial& p = ls.family.polys()[k];
    // A relation Y - g has coefficient 1 on its own Y, which is still 0 in
    // `point`, so evaluating there gives -g.
    if (next_y < nv && p.degree_in(next_y) == 1 && ls.signs[k] == 0) {
      Exponent e(nv, 0);
      e[next_y] = 1;
      if (p.coefficient(e) == 1) {
        point[next_y] = -evaluate(p, point);
        ++next_y;
        continue;
      }
    }
    if (sign(evaluate(p, point)) != ls.signs[k]) return false;
  }
  return true;
}

std::size_t lower_bound_height(const BigInt& b0, unsigned long D, unsigned long p) {
  if (b0 < 1) throw InputError("lower_bound_height needs b0 >= 1");
  if (D < 1 || p < 1) throw InputError("lower_bound_height needs D, p >= 1");
  for (unsigned long t = 0;; ++t) {
    BigInt cap = sign_bound_explicit(D, p + t, std::max(t, 1UL), 2) << t;
    if (b0 <= cap) return t;
  }
}

ActTree act_tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
    throw InputError("tree JSON needs 'input_arity', 'root' and 'vertices'");
  }
  const std::size_t arity = id_field(j, "input_arity");
  const std::size_t root = id_field(j, "root");
  const std::size_t n = j["vertices"].size();
  std::vector<std::optional<ActVertex>> slots(n);
  for (const auto& v : j["vertices"]) {
    if (!v.is_object() || !v.contains("kind") || !v["kind"].is_string()) throw InputError("tree vertex needs a kind");
    const std::size_t id = id_field(v, "id");
    if (id >= n || slots[id]) throw InputError("tree vertex ids must be 0..n-1, each once");
    const std::string kind = v["kind"].get<std::string>();
    if (kind == "compute") {
      ComputeVertex c;
      const std::string op = v.value("op", "");
      if (op == "+") {
        c.op = ActOp::add;
      } else if (op == "-") {
        c.op = ActOp::sub;
      } else if (op == "*") {
        c.op = ActOp::mul;
      } else {
        throw InputError("compute op must be +, - or *");
      }
      if (!v.contains("a") || !v.contains("b")) throw InputError("compute vertex needs operands a and b");
      c.a = operand_from_json(v["a"]);
      c.b = operand_from_json(v["b"]);
      c.next = id_field(v, "next");
      slots[id] = c;
    } else if (kind == "branch") {
      BranchVertex b;
      if (!v.contains("test")) throw InputError("branch vertex needs a test operand");
      b.test = operand_from_json(v["test"]);
      b.zero = id_field(v, "zero");
      b.pos = id_field(v, "pos");
      b.neg = id_field(v, "neg");
      slots[id] = b;
    } else if (kind == "leaf") {
      const std::string label = v.value("label", "");
      if (label != "YES" && label != "NO") throw InputError("leaf label must be YES or NO");
      slots[id] = LeafVertex{label == "YES"};
    } else {
      throw InputError("unknown vertex kind '" + kind + "'");
    }
  }
  std::vector<ActVertex> vertices;
  for (auto& s : slots) vertices.push_back(std::move(*s));
  return ActTree(arity, std::move(vertices), root);
}

Json to_json(const ActTree& t) {
  Json vs = Json::array();
  for (std::size_t i = 0; i < t.vertices().size(); ++i) {
    Json v = std::visit(
        overloaded{[&](const ComputeVertex& c) {
                     return Json{{"kind", "compute"}, {"op", op_name(c.op)}, {"a", operand_json(c.a)},
                                 {"b", operand_json(c.b)}, {"next", c.next}};
                   },
                   [&](const BranchVertex& b) {
                     return Json{{"kind", "branch"}, {"test", operand_json(b.test)}, {"zero", b.zero},
                                 {"pos", b.pos}, {"neg", b.neg}};
                   },
                   [](const LeafVertex& l) { return Json{{"kind", "leaf"}, {"label", l.yes ? "YES" : "NO"}}; }},
        t.vertices()[i]);
    v["id"] = i;
    vs.push_back(std::move(v));
  }
  return Json{{"input_arity", t.input_arity()}, {"root", t.root()}, {"vertices", vs}};
}

Json to_json(const SimulationResult& r) {
  Json trace = Json::object();
  for (const auto& [v, val] : r.trace) trace[std::to_string(v)] = to_string(val);
  return Json{{"label", r.yes ? "YES" : "NO"}, {"leaf", r.leaf}, {"path", r.path}, {"trace", trace}};
}

Json to_json(const LeafSystem& ls) {
  return Json{{"leaf", ls.leaf},
              {"inputs", ls.inputs},
              {"compute_vertices", ls.compute_vertices},
              {"family", to_json(ls.family)},
              {"signs", sign_string(ls.signs)}};
}

}  // namespace semialg
