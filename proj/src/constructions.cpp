#include "semialg/constructions.hpp"

#include <algorithm>
#include <set>

#include "semialg/errors.hpp"

namespace semialg {

namespace {

Rational qpow(const Rational& b, unsigned long e) {
  Rational r = 1;
  for (unsigned long k = 0; k < e; ++k) r *= b;
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

// Small nonzero integer in [-range, range].
Rational small_int(Rng& rng, unsigned range) {
  long v = static_cast<long>(rng.below(2 * range)) - static_cast<long>(range);
  if (v >= 0) ++v;
  return Rational(v);
}

std::size_t rank_of(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  std::vector<Rational> zero(rows.size(), Rational(0));
  return AffineMap(std::move(rows), std::move(zero)).rank();
}

// Restriction of an affine form to a p-plane: p linear coefficients and a
// constant term last.
std::vector<Rational> restricted_form(const Polynomial& form, const AffineMap& plane) {
  Polynomial r = restrict(form, plane);
  const std::size_t p = plane.domain_dim;
  std::vector<Rational> out;
  for (std::size_t k = 0; k < p; ++k) {
    Exponent e(p, 0);
    e[k] = 1;
    out.push_back(r.coefficient(e));
  }
  out.push_back(r.coefficient(Exponent(p, 0)));
  return out;
}

// Every p of the restricted forms have independent linear parts and no
// p + 1 of them vanish together, so each i-subset cuts a (p-i)-plane and
// distinct subsets give distinct pieces.
bool general_position(const std::vector<std::vector<Rational>>& forms, std::size_t p) {
  const std::size_t n = forms.size();
  auto for_subsets = [&](std::size_t k, auto&& test) {
    if (k > n) return true;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (!test(idx)) return false;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) return true;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  };
  bool linear_ok = p == 0 || for_subsets(p, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Rational>> rows;
    for (auto i : idx) rows.emplace_back(forms[i].begin(), forms[i].begin() + static_cast<long>(p));
    return rank_of(rows) == p;
  });
  if (!linear_ok) return false;
  return for_subsets(p + 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<Rational>> rows;
    for (auto i : idx) rows.push_back(forms[i]);
    return rank_of(rows) == p + 1;
  });
}

}  // namespace

PerturbationSchedule make_schedule(unsigned long s, unsigned long d, const Rational& contraction) {
  if (contraction <= 0 || contraction >= 1) throw InputError("contraction must lie in (0, 1)");
  PerturbationSchedule out;
  out.contraction = contraction;
  out.eps = contraction;
  const unsigned long total = s * d;
  out.deltas.assign(s, std::vector<Rational>(d));
  for (unsigned long i = 0; i < s; ++i) {
    for (unsigned long j = 0; j < d; ++j) {
      out.deltas[i][j] = qpow(contraction, total + 1 - (i * d + j));
    }
  }
  return out;
}

TightInstance ovals_family(unsigned long D, unsigned long s, unsigned long d, const Rational& contraction) {
  if (D < 1 || s < 1 || d < 1) throw InputError("ovals_family needs D, s, d >= 1");
  PerturbationSchedule sched = make_schedule(s, d, contraction);

  Polynomial f1 = Polynomial::constant(1, 1);
  for (unsigned long j = 0; j < D; ++j) {
    f1 = f1 * (Polynomial::variable(1, 0) - Polynomial::constant(1, Rational(j)));
  }
  auto f1_squared = [&](const Rational& t) -> Rational {
    Rational v = evaluate(f1, std::vector<Rational>{t});
    return v * v;
  };
  // Away from the half-integer grid lines each window holds one oval.
  for (unsigned long j = 0; j <= D; ++j) {
    Rational h = Rational(2 * static_cast<long>(j) - 1) / 2;
    if (f1_squared(h) <= sched.eps) {
      throw HypothesisError("contraction too large: ovals touch their window boundaries");
    }
  }
  if (f1_squared(sched.deltas.back().back()) >= sched.eps) {
    throw HypothesisError("contraction too large: lines miss the first column of ovals");
  }

  Polynomial q = Polynomial::constant(2, -sched.eps);
  for (std::size_t i = 0; i < 2; ++i) {
    Polynomial g = Polynomial::constant(2, 1);
    for (unsigned long j = 0; j < D; ++j) {
      Polynomial lin = Polynomial::variable(2, i) - Polynomial::constant(2, Rational(j));
      g = g * lin * lin;
    }
    q += g;
  }

  std::vector<Polynomial> polys;
  for (unsigned long i = 0; i < s; ++i) {
    Polynomial p = Polynomial::constant(2, 1);
    for (unsigned long j = 0; j < d; ++j) {
      p = p * (Polynomial::variable(2, 0) - Polynomial::constant(2, sched.deltas[i][j]));
    }
    polys.push_back(std::move(p));
  }

  TightInstance inst;
  inst.name = "ovals";
  inst.params = Json{{"D", D}, {"s", s}, {"d", d}, {"contraction", to_string(contraction)}};
  inst.variety = make_hypersurface(q, 2 * D);
  inst.family = PolyFamily(2, std::move(polys));
  inst.expected_total = BigInt(D) * (4 * s * d + D - 1);
  inst.expected_kind = ExpectedKind::component_total;
  const Rational half = Rational(1) / 2;
  for (unsigned long i = 0; i < D; ++i) {
    for (unsigned long j = 0; j < D; ++j) {
      Rational x(static_cast<long>(i)), y(static_cast<long>(j));
      inst.pieces.push_back(OvalPiece{q, {x - half, x + half}, {y - half, y + half}, x});
    }
  }
  inst.schedule = std::move(sched);
  return inst;
}

TightInstance subspace_family(unsigned long D, unsigned long p, unsigned long s, unsigned long d,
                              unsigned long N, std::uint64_t seed) {
  if (D < 1 || s < 1 || d < 1) throw InputError("subspace_family needs D, s, d >= 1");
  if (N <= 2 * p) throw HypothesisError("subspace_family requires N > 2p");
  Rng rng(seed);

  constexpr int kAttempts = 100;
  std::vector<AffineMap> planes;
  for (int attempt = 0; planes.size() < D; ++attempt) {
    if (attempt == kAttempts) throw GenericityError("could not draw disjoint affine subspaces");
    std::vector<std::vector<Rational>> m(N, std::vector<Rational>(p));
    std::vector<Rational> b(N);
    for (auto& row : m)
      for (auto& c : row) c = small_int(rng, 3);
    for (auto& c : b) c = small_int(rng, 5);
    AffineMap cand(std::move(m), std::move(b));
    if (cand.rank() != p) continue;
    bool disjoint = std::none_of(planes.begin(), planes.end(),
                                 [&](const AffineMap& o) { return affine_images_intersect(o, cand); });
    if (disjoint) planes.push_back(std::move(cand));
  }

  std::vector<Polynomial> forms;
  for (int attempt = 0;; ++attempt) {
    if (attempt == kAttempts) throw GenericityError("could not draw linear forms in general position");
    forms.clear();
    for (unsigned long k = 0; k < s * d; ++k) {
      Polynomial form = Polynomial::constant(N, small_int(rng, 7));
      for (unsigned long i = 0; i < N; ++i) form += Polynomial::variable(N, i) * small_int(rng, 7);
      forms.push_back(std::move(form));
    }
    bool ok = std::all_of(planes.begin(), planes.end(), [&](const AffineMap& plane) {
      std::vector<std::vector<Rational>> restricted;
      for (const auto& f : forms) restricted.push_back(restricted_form(f, plane));
      return general_position(restricted, p);
    });
    if (ok) break;
  }

  std::vector<Polynomial> polys;
  for (unsigned long i = 0; i < s; ++i) {
    Polynomial prod = Polynomial::constant(N, 1);
    for (unsigned long j = 0; j < d; ++j) prod = prod * forms[i * d + j];
    polys.push_back(std::move(prod));
  }

  BigInt sum = 0;
  for (unsigned long i = 0; i <= std::min(p, s); ++i) {
    BigInt c, pw;
    mpz_bin_uiui(c.get_mpz_t(), s, i);
    mpz_ui_pow_ui(pw.get_mpz_t(), d, i);
    sum += c * pw;
  }

  TightInstance inst;
  inst.name = "subspaces";
  inst.params = Json{{"D", D}, {"p", p}, {"s", s}, {"d", d}, {"N", N}, {"seed", seed}};
  inst.variety = make_affine_union(std::move(planes), p);
  inst.family = PolyFamily(N, std::move(polys));
  inst.expected_total = BigInt(D) * sum;
  inst.expected_kind = ExpectedKind::closure_degree_sum;
  return inst;
}

BigInt grassmannian_degree(unsigned long m, unsigned long N) {
  if (m < 1 || m >= N) throw InputError("grassmannian_degree needs 1 <= m < N");
  Rational v(factorial(m * (N - m)));
  for (unsigned long i = 0; i < m; ++i) v *= Rational(factorial(i)) / Rational(factorial(N - m + i));
  if (v.get_den() != 1) throw InconsistencyError("Grassmannian degree is not an integer");
  return v.get_num();
}

TightnessResult check_tightness(const TightInstance& inst, std::size_t max_resolution,
                                const AtlasOptions& options) {
  TightnessResult r;
  r.expected = inst.expected_total;
  if (inst.expected_kind == ExpectedKind::component_total) {
    RegionAtlas a = inst.pieces.empty()
                        ? enumerate_sign_conditions(inst.family, inst.variety, {}, 8, 0, options)
                        : enumerate_sign_conditions(inst.family, inst.variety, inst.pieces, {}, 8, 0, options);
    a = refine_until_converged(std::move(a), max_resolution);
    r.measured = a.total_components();
    r.resolution = a.resolution;
    Json counts = Json::object();
    for (const auto& [sv, n] : a.counts()) counts[sign_string(sv)] = n;
    r.detail = Json{{"counts", counts}};
  } else {
    PatternMap pm = enumerate_patterns(inst.family, inst.variety);
    r.measured = closure_degree_sum(pm);
    Json degrees = Json::object();
    for (const auto& [pat, cell] : pm) degrees[pattern_string(pat)] = json_integer(cell.closure_degree);
    r.detail = Json{{"closure_degrees", degrees}};
  }
  r.equal = r.measured == r.expected;
  return r;
}

Json to_json(const PerturbationSchedule& s) {
  Json deltas = Json::array();
  for (const auto& row : s.deltas) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    deltas.push_back(std::move(r));
  }
  return Json{{"contraction", to_string(s.contraction)}, {"eps", to_string(s.eps)}, {"deltas", deltas}};
}

Json to_json(const TightInstance& inst) {
  Json j{{"name", inst.name},
         {"params", inst.params},
         {"variety", to_json(inst.variety)},
         {"family", to_json(inst.family)},
         {"expected_total", json_integer(inst.expected_total)},
         {"expected_kind",
          inst.expected_kind == ExpectedKind::component_total ? "component_total" : "closure_degree_sum"}};
  if (inst.schedule) j["schedule"] = to_json(*inst.schedule);
  return j;
}

Json to_json(const TightnessResult& r) {
  return Json{{"expected", json_integer(r.expected)},
              {"measured", json_integer(r.measured)},
              {"equal", r.equal},
              {"resolution", r.resolution},
              {"detail", r.detail}};
}

}  // namespace semialg
