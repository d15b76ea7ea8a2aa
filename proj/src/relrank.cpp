#include "semialg/relrank.hpp"

#include <mpfr.h>

#include <set>

#include "semialg/errors.hpp"

namespace semialg {

namespace {

constexpr mpfr_prec_t kPrec = 256;

struct Mp {
  mpfr_t v;
  Mp() { mpfr_init2(v, kPrec); mpfr_set_zero(v, 1); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  ~Mp() { mpfr_clear(v); }
};

void log2_z(Mp& out, const BigInt& z) {
  Mp x;
  mpfr_set_z(x.v, z.get_mpz_t(), MPFR_RNDN);
  mpfr_log2(out.v, x.v, MPFR_RNDN);
}

void mul_q(Mp& x, const Rational& q) { mpfr_mul_q(x.v, x.v, q.get_mpq_t(), MPFR_RNDN); }

Vector add(const Vector& a, const Vector& b) {
  Vector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

bool is_zero(const Vector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

// Visits levels 1, 2, ... of the search; `visit(level, fresh)` gets the
// elements first reached at that level and returns false to stop.
template <class Visit>
void search(const RankInstance& inst, Visit visit) {
  inst.check();
  if (inst.budget == 0) return;
  std::set<Vector> seen(inst.delta.begin(), inst.delta.end());
  std::vector<Vector> frontier(seen.begin(), seen.end());
  std::size_t level = 1;
  while (true) {
    if (!visit(level, frontier) || level == inst.budget || frontier.empty()) return;
    std::vector<Vector> next;
    for (const auto& x : frontier) {
      for (const auto& d : inst.delta) {
        Vector y = inst.mode == RankMode::additive ? add(x, d) : inst.algebra->multiply(x, d);
        if (seen.insert(y).second) {
          if (seen.size() > inst.max_elements) throw BudgetError("rank search exceeds its element cap");
          next.push_back(std::move(y));
        }
      }
    }
    frontier = std::move(next);
    ++level;
  }
}

Vector rational_row(const Json& j) { return rational_vector_from_json(j); }

}  // namespace

AlgebraTable::AlgebraTable(std::vector<std::vector<Vector>> constants, std::optional<Vector> identity)
    : c_(std::move(constants)), identity_(std::move(identity)) {
  const std::size_t n = c_.size();
  for (const auto& row : c_) {
    if (row.size() != n) throw InputError("structure constants must be n x n x n");
    for (const auto& v : row)
      if (v.size() != n) throw InputError("structure constants must be n x n x n");
  }
  if (identity_) {
    if (identity_->size() != n) throw InputError("identity has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
      Vector e(n, Rational(0));
      e[i] = 1;
      if (multiply(*identity_, e) != e || multiply(e, *identity_) != e) {
        throw InputError("designated identity does not act as the identity");
      }
    }
  }
}

Vector AlgebraTable::multiply(const Vector& a, const Vector& b) const {
  const std::size_t n = dim();
  if (a.size() != n || b.size() != n) throw InputError("algebra element has the wrong length");
  Vector r(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      Rational ab = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (c_[i][j][k] != 0) r[k] += ab * c_[i][j][k];
      }
    }
  }
  return r;
}

AlgebraTable matrix_algebra(std::size_t m) {
  const std::size_t n = m * m;
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n, Vector(n, Rational(0))));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < m; ++l) c[i * m + j][j * m + l][i * m + l] = 1;
  Vector id(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i) id[i * m + i] = 1;
  return AlgebraTable(std::move(c), std::move(id));
}

void RankInstance::check() const {
  if (delta.empty()) throw InputError("generating set must be non-empty");
  for (const auto& d : delta) {
    if (d.size() != ambient_dim) throw InputError("generator length differs from the ambient dimension");
  }
  if (mode == RankMode::multiplicative && (!algebra || algebra->dim() != ambient_dim)) {
    throw InputError("multiplicative rank needs an algebra table of the ambient dimension");
  }
}

std::optional<std::size_t> relative_rank(const RankInstance& inst, const Vector& target) {
  inst.check();
  if (target.size() != inst.ambient_dim) throw InputError("target length differs from the ambient dimension");
  if (inst.mode == RankMode::additive && is_zero(target)) return 0;
  std::optional<std::size_t> found;
  search(inst, [&](std::size_t level, const std::vector<Vector>& fresh) {
    for (const auto& v : fresh) {
      if (v == target) {
        found = level;
        return false;
      }
    }
    return true;
  });
  return found;
}

std::optional<std::size_t> rank_of_set(const RankInstance& inst, const std::vector<Vector>& targets) {
  std::size_t best = 0;
  for (const auto& t : targets) {
    auto r = relative_rank(inst, t);
    if (!r) return std::nullopt;
    best = std::max(best, *r);
  }
  return best;
}

std::vector<std::size_t> new_elements_per_level(const RankInstance& inst) {
  std::vector<std::size_t> out;
  search(inst, [&](std::size_t, const std::vector<Vector>& fresh) {
    out.push_back(fresh.size());
    return true;
  });
  out.resize(inst.budget, 0);
  return out;
}

RankBound rank_lower_bound(const BigInt& card, unsigned long p, unsigned long D, unsigned long s,
                           unsigned long delta_deg, RankBoundMode mode, const Rational& c) {
  if (card < 2) throw InputError("rank_lower_bound needs card >= 2");
  if (c <= 0 || D < 1 || s < 1 || delta_deg < 1) throw InputError("rank_lower_bound needs c > 0 and D, s, delta_deg >= 1");
  Mp num, inner, t, den;
  log2_z(num, card);
  log2_z(inner, BigInt(delta_deg));
  log2_z(t, BigInt(s));
  mpfr_add(inner.v, inner.v, t.v, MPFR_RNDN);
  if (mode == RankBoundMode::algebra) {
    mpfr_log2(t.v, num.v, MPFR_RNDN);
    mpfr_add(inner.v, inner.v, t.v, MPFR_RNDN);
  }
  mpfr_mul_ui(inner.v, inner.v, p, MPFR_RNDN);
  log2_z(t, BigInt(D));
  mpfr_add(den.v, inner.v, t.v, MPFR_RNDN);
  mul_q(den, c);
  if (mpfr_zero_p(den.v)) throw InputError("rank_lower_bound denominator vanishes");
  mpfr_div(num.v, num.v, den.v, MPFR_RNDN);
  RankBound r;
  r.value = mpfr_get_d(num.v, MPFR_RNDN);
  mpfr_get_z(r.floor.get_mpz_t(), num.v, MPFR_RNDD);
  return r;
}

double quantum_bound(unsigned long n, unsigned long p, const BigInt& D, unsigned long t,
                     const Rational& C, QuantumVariant variant) {
  if (n < 1) throw InputError("quantum_bound needs n >= 1");
  if (D < 1 || C <= 0) throw InputError("quantum_bound needs D >= 1 and C > 0");
  Mp num, den, l;
  mpfr_set_ui(num.v, 1, MPFR_RNDN);
  mpfr_mul_2ui(num.v, num.v, n, MPFR_RNDN);
  mul_q(num, C);
  const unsigned long width = variant == QuantumVariant::stringent ? n : n + t;
  mpfr_set_ui(den.v, p, MPFR_RNDN);
  mpfr_mul_ui(den.v, den.v, width, MPFR_RNDN);
  log2_z(l, D);
  mpfr_add(den.v, den.v, l.v, MPFR_RNDN);
  if (mpfr_zero_p(den.v)) throw InputError("quantum_bound denominator vanishes");
  mpfr_div(num.v, num.v, den.v, MPFR_RNDN);
  return mpfr_get_d(num.v, MPFR_RNDN);
}

PermutationMatrix build_uf(unsigned n, const std::vector<bool>& truth_table) {
  if (n > 20) throw InputError("build_uf supports n <= 20");
  const std::size_t inputs = std::size_t{1} << n;
  if (truth_table.size() != inputs) throw InputError("truth table must have 2^n entries");
  const std::size_t size = 2 * inputs;
  PermutationMatrix u(size, std::vector<int>(size, 0));
  for (std::size_t x = 0; x < inputs; ++x) {
    for (std::size_t y = 0; y < 2; ++y) {
      std::size_t out = 2 * x + (y ^ (truth_table[x] ? 1 : 0));
      u[out][2 * x + y] = 1;
    }
  }
  return u;
}

Vector flatten(const PermutationMatrix& m) {
  Vector v;
  for (const auto& row : m)
    for (int e : row) v.emplace_back(e);
  return v;
}

Json to_json(const AlgebraTable& a) {
  Json c = Json::array();
  for (const auto& row : a.constants()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_json(std::span<const Rational>(v)));
    c.push_back(std::move(r));
  }
  Json j{{"dim", a.dim()}, {"constants", c}};
  j["identity"] = a.identity() ? to_json(std::span<const Rational>(*a.identity())) : Json(nullptr);
  return j;
}

AlgebraTable algebra_table_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("algebra JSON must be an object");
  if (j.contains("matrix_algebra")) {
    if (!json_is_count(j["matrix_algebra"])) throw InputError("'matrix_algebra' must be a matrix size");
    return matrix_algebra(j["matrix_algebra"].get<std::size_t>());
  }
  if (!j.contains("constants") || !j["constants"].is_array()) throw InputError("algebra JSON needs 'constants'");
  std::vector<std::vector<Vector>> c;
  for (const auto& row : j["constants"]) {
    if (!row.is_array()) throw InputError("structure constants must be nested arrays");
    std::vector<Vector> r;
    for (const auto& v : row) r.push_back(rational_row(v));
    c.push_back(std::move(r));
  }
  std::optional<Vector> id;
  if (j.contains("identity") && !j["identity"].is_null()) id = rational_row(j["identity"]);
  return AlgebraTable(std::move(c), std::move(id));
}

Json to_json(const RankInstance& inst) {
  Json d = Json::array();
  for (const auto& v : inst.delta) d.push_back(to_json(std::span<const Rational>(v)));
  Json j{{"ambient_dim", inst.ambient_dim},
         {"delta", d},
         {"mode", inst.mode == RankMode::additive ? "additive" : "multiplicative"},
         {"budget", inst.budget}};
  if (inst.mode == RankMode::multiplicative) j["association"] = "left";
  if (inst.algebra) j["algebra"] = to_json(*inst.algebra);
  return j;
}

RankInstance rank_instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("ambient_dim") || !json_is_count(j["ambient_dim"]) || !j.contains("delta") ||
      !j["delta"].is_array()) {
    throw InputError("rank instance JSON needs 'ambient_dim' and 'delta'");
  }
  RankInstance inst;
  inst.ambient_dim = j["ambient_dim"].get<std::size_t>();
  for (const auto& v : j["delta"]) inst.delta.push_back(rational_row(v));
  const std::string mode = j.value("mode", "additive");
  if (mode == "additive") {
    inst.mode = RankMode::additive;
  } else if (mode == "multiplicative") {
    inst.mode = RankMode::multiplicative;
  } else {
    throw InputError("rank mode must be additive or multiplicative");
  }
  if (j.contains("budget")) {
    if (!json_is_count(j["budget"])) throw InputError("'budget' must be a non-negative integer");
    inst.budget = j["budget"].get<std::size_t>();
  }
  if (j.contains("algebra")) inst.algebra = algebra_table_from_json(j["algebra"]);
  inst.check();
  return inst;
}

}  // namespace semialg
