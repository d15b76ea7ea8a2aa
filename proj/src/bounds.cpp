#include "semialg/bounds.hpp"

#include <set>

#include "semialg/errors.hpp"

namespace semialg {

namespace {

BigInt binom(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt ipow(const BigInt& b, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

BigInt ipow(unsigned long b, unsigned long e) { return ipow(BigInt(b), e); }

Rational qpow(const Rational& b, unsigned long e) {
  Rational r(ipow(b.get_num(), e), ipow(b.get_den(), e));
  r.canonicalize();
  return r;
}

BigInt ceil_of(const Rational& q) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

void hypothesis(bool ok, const std::string& what) {
  if (!ok) throw HypothesisError(what);
}

}  // namespace

// ---------------------------------------------------------------- profile

ConstantProfile::ConstantProfile(std::map<std::string, Rational> constants)
    : constants_(std::move(constants)) {
  for (const auto& [name, v] : constants_) {
    if (v <= 0) throw InputError("constant '" + name + "' must be positive");
  }
}

Rational ConstantProfile::get(const std::string& name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? Rational(1) : it->second;
}

ConstantProfile constant_profile_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("constant profile must be a JSON object");
  std::map<std::string, Rational> m;
  for (const auto& [k, v] : j.items()) {
    if (v.is_string()) {
      m[k] = parse_rational(v.get<std::string>());
    } else if (v.is_number_integer()) {
      m[k] = Rational(BigInt(std::to_string(v.get<long long>())));
    } else {
      throw InputError("constant '" + k + "' must be an integer or a rational string");
    }
  }
  return ConstantProfile(std::move(m));
}

Json to_json(const ConstantProfile& c) {
  Json j = Json::object();
  for (const auto& [k, v] : c.constants()) j[k] = to_string(v);
  return j;
}

Json to_json(const BoundReport& r) {
  Json j{{"theorem_id", r.theorem_id},
         {"params", r.params},
         {"value", json_integer(r.value)},
         {"exact", to_string(r.exact)},
         {"formula", r.formula},
         {"constant_parameterized", r.constant_parameterized}};
  j["check"] = r.check ? Json(*r.check) : Json(nullptr);
  return j;
}

// ----------------------------------------------------------- calculators

BigInt zero_nonzero_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d) {
  require(D >= 1 && d >= 1, "zero_nonzero_bound needs D >= 1 and d >= 1");
  BigInt sum = 0;
  for (unsigned long i = 0; i <= p; ++i) sum += binom(s, i) * ipow(d, i);
  return D * sum;
}

BigInt sign_bound_explicit(unsigned long D, unsigned long p, unsigned long s, unsigned long d) {
  require(D >= 1 && p >= 1 && s >= 1 && d >= 1, "sign_bound_explicit needs D, p, s, d >= 1");
  const BigInt per = BigInt(28) * D * d * ipow(8 * D * d - 1, p - 1);
  BigInt total = 0;
  for (unsigned long j = 1; j <= p; ++j) total += ipow(4, j) * binom(s, j) * per;
  for (unsigned long j = 1; j + 1 <= p; ++j) total += ipow(4, j) * binom(s, j) * per;
  total += BigInt(14) * D * ipow(4 * D - 1, p);
  return total;
}

BigInt components_bound(unsigned long D, unsigned long p) {
  require(D >= 1, "components_bound needs D >= 1");
  return ipow(2, 2 * p + 3) * ipow(D, p + 1);
}

BigInt ci_betti(const std::vector<unsigned long>& degrees, unsigned long N) {
  const unsigned long l = degrees.size();
  require(l >= 1 && l <= N, "ci_betti needs 1 <= number of equations <= N");
  for (auto e : degrees) require(e >= 1, "ci_betti needs equation degrees >= 1");
  const unsigned long top = N - l;
  // h[j] = complete homogeneous symmetric polynomial of degree j.
  std::vector<BigInt> h(top + 1, BigInt(0));
  h[0] = 1;
  for (auto e : degrees) {
    for (unsigned long j = 1; j <= top; ++j) h[j] += e * h[j - 1];
  }
  BigInt prod = 1;
  for (auto e : degrees) prod *= e;
  BigInt sum = 0;
  for (unsigned long j = 0; j <= top; ++j) {
    BigInt term = binom(N + 1, j + l + 1) * h[j];
    if ((top - j) % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  const unsigned long m = N - l + 1;
  BigInt head = (m % 2 == 0) ? BigInt(2 * m) : BigInt(0);
  return head + prod * sum;
}

namespace {

Rational ci_sign_exact(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                       unsigned long i, const ConstantProfile& c) {
  require(D >= 1 && i <= p, "ci_sign_bound needs D >= 1 and 0 <= i <= p");
  hypothesis(d >= D, "ci_sign_bound requires d >= D");
  return Rational(ipow(s, p - i) * ipow(D, 2)) * qpow(c.get("ci_sign") * d, p);
}

Rational cc_meeting_exact(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                          const ConstantProfile& c) {
  require(D >= 1, "cc_meeting_bound needs D >= 1");
  hypothesis(d >= D, "cc_meeting_bound requires d >= D");
  return Rational(ipow(D, 4)) * qpow(c.get("cc_meeting") * s * d, 2 * p);
}

}  // namespace

BigInt ci_sign_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                     unsigned long i, const ConstantProfile& c) {
  return ceil_of(ci_sign_exact(D, p, s, d, i, c));
}

BigInt cc_meeting_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                        const ConstantProfile& c) {
  return ceil_of(cc_meeting_exact(D, p, s, d, c));
}

BigInt bprplus_bound(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                     unsigned long i) {
  require(D >= 1 && s >= 1 && d >= 1 && i <= p, "bprplus_bound needs D, s, d >= 1 and 0 <= i <= p");
  BigInt total = 0;
  const BigInt first = ipow(D, p) * ipow(2 * d, p) + D;
  for (unsigned long j = 0; j + i + 1 <= p; ++j) total += binom(s, j + 1) * first;
  if (p >= 1) {
    const BigInt second = ipow(D, p - 1) * ipow(2 * d, p - 1) + D;
    for (unsigned long j = 0; j + i + 2 <= p; ++j) total += binom(s, j + 1) * second;
  }
  return total + ipow(D, p + 1);
}

BigInt op_bound(unsigned long d, unsigned long m, OpKind kind) {
  require(d >= 1 && m >= 1, "op_bound needs d, m >= 1");
  BigInt base = ipow(4 * d - 1, m - 1) * d;
  return kind == OpKind::algebraic_set ? 2 * base : 14 * base;
}

// ------------------------------------------------------------ dispatching

namespace {

class Params {
 public:
  Params(const Json& j, std::set<std::string> names) : j_(j) {
    if (!j.is_object()) throw InputError("bound parameters must be a JSON object");
    for (const auto& [k, v] : j.items()) {
      if (!names.count(k)) throw InputError("unexpected parameter '" + k + "'");
    }
    for (const auto& n : names) {
      if (!j.contains(n)) throw InputError("missing parameter '" + n + "'");
    }
  }
  unsigned long count(const std::string& name) const {
    const Json& v = j_.at(name);
    if (!json_is_count(v)) {
      throw InputError("parameter '" + name + "' must be a non-negative integer");
    }
    return v.get<unsigned long>();
  }
  std::vector<unsigned long> counts(const std::string& name) const {
    const Json& v = j_.at(name);
    if (!v.is_array()) throw InputError("parameter '" + name + "' must be an array");
    std::vector<unsigned long> out;
    for (const auto& e : v) {
      if (!json_is_count(e)) throw InputError("parameter '" + name + "' needs non-negative integers");
      out.push_back(e.get<unsigned long>());
    }
    return out;
  }
  std::string text(const std::string& name) const {
    const Json& v = j_.at(name);
    if (!v.is_string()) throw InputError("parameter '" + name + "' must be a string");
    return v.get<std::string>();
  }

 private:
  const Json& j_;
};

BoundReport integer_report(std::string id, const Json& params, BigInt value, std::string formula) {
  BoundReport r;
  r.theorem_id = std::move(id);
  r.params = params;
  r.exact = Rational(value);
  r.value = std::move(value);
  r.formula = std::move(formula);
  return r;
}

BoundReport constant_report(std::string id, const Json& params, const Rational& exact,
                            std::string formula) {
  BoundReport r;
  r.theorem_id = std::move(id);
  r.params = params;
  r.exact = exact;
  r.value = ceil_of(exact);
  r.formula = std::move(formula);
  r.constant_parameterized = true;
  return r;
}

BoundReport barone_basu(const Json& j, const ConstantProfile& c) {
  Params p(j, {"N", "s", "d", "degrees", "dims"});
  const unsigned long N = p.count("N"), s = p.count("s"), d = p.count("d");
  const auto degs = p.counts("degrees");
  const auto dims = p.counts("dims");
  require(!degs.empty() && degs.size() == dims.size(), "barone_basu needs matching degrees and dims");
  // The chain starts at the ambient space: p_0 = N.
  unsigned long prev = N;
  for (auto q : dims) {
    require(q <= prev, "barone_basu needs N >= p_1 >= ... >= p_l");
    prev = q;
  }
  // 2 <= d_1 <= d_2 <= d_3/(N+1) <= ... <= d_l/(N+1)^(l-2), d_l <= d/(N+1)
  hypothesis(degs[0] >= 2, "barone_basu requires d_1 >= 2");
  for (std::size_t k = 1; k < degs.size(); ++k) {
    BigInt lhs = BigInt(degs[k - 1]) * (k >= 2 ? BigInt(N + 1) : BigInt(1));
    hypothesis(lhs <= degs[k], "barone_basu degree chain hypothesis fails");
  }
  hypothesis(BigInt(degs.back()) * (N + 1) <= d, "barone_basu requires d_l <= d/(N+1)");
  Rational v = qpow(c.get("barone_basu") * N, 2 * N) * Rational(ipow(BigInt(s) * d, dims.back()));
  prev = N;
  for (std::size_t k = 0; k < degs.size(); ++k) {
    v *= Rational(ipow(degs[k], prev - dims[k]));
    prev = dims[k];
  }
  return constant_report("barone_basu", j, v, "(c N)^(2N) (s d)^(p_l) prod_j d_j^(p_(j-1) - p_j), p_0 = N");
}

}  // namespace

BoundReport legacy_bound(const std::string& id, const Json& j, const ConstantProfile& c) {
  if (id == "warren" || id == "rbg") {
    Params p(j, {"s", "d", "N"});
    Rational v = qpow(c.get(id) * p.count("s") * p.count("d"), p.count("N"));
    return constant_report(id, j, v, "(c s d)^N");
  }
  if (id == "bpr") {
    Params p(j, {"s", "p", "i", "d", "N"});
    const unsigned long dim = p.count("p"), i = p.count("i");
    require(i <= dim, "bpr needs 0 <= i <= p");
    Rational v = Rational(ipow(p.count("s"), dim - i)) * qpow(c.get("bpr") * p.count("d"), p.count("N"));
    return constant_report(id, j, v, "s^(p-i) (c d)^N");
  }
  if (id == "barone_basu") return barone_basu(j, c);
  if (id == "walsh") {
    Params p(j, {"N", "D", "deg_P", "p"});
    require(p.count("D") >= 1, "walsh needs D >= 1");
    Rational v = c.get("walsh") * p.count("D") * Rational(ipow(p.count("deg_P"), p.count("p")));
    return constant_report(id, j, v, "C(N) D deg(P)^p");
  }
  if (id == "laszlo_viterbo") {
    Params p(j, {"D", "p"});
    const unsigned long dim = p.count("p");
    return integer_report(id, j, ipow(2, dim * dim + 2) * ipow(p.count("D"), dim + 1), "2^(p^2+2) D^(p+1)");
  }
  if (id == "kharlamov") {
    Params p(j, {"D", "p"});
    return integer_report(id, j, ipow(p.count("D"), p.count("p") + 1), "D^(p+1)");
  }
  if (id == "minimal_degree_check") {
    Params p(j, {"N", "D", "p"});
    bool ok = p.count("N") + 1 <= p.count("D") + p.count("p");
    BoundReport r = integer_report(id, j, ok ? 1 : 0, "N <= D + p - 1");
    r.check = ok;
    return r;
  }
  throw InputError("unknown bound id '" + id + "'");
}

BoundReport compute_bound(const std::string& id, const Json& j, const ConstantProfile& c) {
  if (id == "zero_nonzero_bound") {
    Params p(j, {"D", "p", "s", "d"});
    return integer_report(id, j, zero_nonzero_bound(p.count("D"), p.count("p"), p.count("s"), p.count("d")),
                          "D * sum_{i=0}^{p} C(s,i) d^i");
  }
  if (id == "sign_bound_explicit") {
    Params p(j, {"D", "p", "s", "d"});
    return integer_report(
        id, j, sign_bound_explicit(p.count("D"), p.count("p"), p.count("s"), p.count("d")),
        "sum_{j=1}^{p} 4^j C(s,j) 28 D d (8Dd-1)^(p-1) + sum_{j=1}^{p-1} 4^j C(s,j) 28 D d (8Dd-1)^(p-1) "
        "+ 14 D (4D-1)^p; absorbs into O(D)^p ((s d)^p + D)");
  }
  if (id == "components_bound") {
    Params p(j, {"D", "p"});
    return integer_report(id, j, components_bound(p.count("D"), p.count("p")), "2^(2p+3) D^(p+1)");
  }
  if (id == "ci_betti") {
    Params p(j, {"degrees", "N"});
    return integer_report(id, j, ci_betti(p.counts("degrees"), p.count("N")),
                          "(1+(-1)^(N-l+1))(N-l+1) + e_1...e_l sum_{j=0}^{N-l} (-1)^(N-l-j) "
                          "C(N+1, j+l+1) h_j(e)");
  }
  if (id == "ci_sign_bound") {
    Params p(j, {"D", "p", "s", "d", "i"});
    Rational v = ci_sign_exact(p.count("D"), p.count("p"), p.count("s"), p.count("d"), p.count("i"), c);
    return constant_report(id, j, v, "s^(p-i) D^2 (c d)^p");
  }
  if (id == "cc_meeting_bound") {
    Params p(j, {"D", "p", "s", "d"});
    Rational v = cc_meeting_exact(p.count("D"), p.count("p"), p.count("s"), p.count("d"), c);
    return constant_report(id, j, v, "D^4 (c s d)^(2p)");
  }
  if (id == "bprplus_bound") {
    Params p(j, {"D", "p", "s", "d", "i"});
    return integer_report(
        id, j, bprplus_bound(p.count("D"), p.count("p"), p.count("s"), p.count("d"), p.count("i")),
        "sum_{j=0}^{p-i-1} C(s,j+1)(D^p (2d)^p + D) + sum_{j=0}^{p-i-2} C(s,j+1)(D^(p-1) (2d)^(p-1) + D) "
        "+ D^(p+1)");
  }
  if (id == "op_bound") {
    Params p(j, {"d", "m", "kind"});
    std::string kind = p.text("kind");
    OpKind k;
    if (kind == "algebraic_set") {
      k = OpKind::algebraic_set;
    } else if (kind == "nonsingular_complement") {
      k = OpKind::nonsingular_complement;
    } else {
      throw InputError("op_bound kind is algebraic_set or nonsingular_complement");
    }
    return integer_report(id, j, op_bound(p.count("d"), p.count("m"), k),
                          k == OpKind::algebraic_set ? "2d (4d-1)^(m-1)" : "14d (4d-1)^(m-1)");
  }
  return legacy_bound(id, j, c);
}

std::vector<std::string> bound_ids() {
  return {"zero_nonzero_bound", "sign_bound_explicit", "components_bound", "ci_betti",
          "ci_sign_bound",      "cc_meeting_bound",    "bprplus_bound",    "op_bound",
          "warren",             "rbg",                 "bpr",              "barone_basu",
          "walsh",              "laszlo_viterbo",      "kharlamov",        "minimal_degree_check"};
}

}  // namespace semialg
