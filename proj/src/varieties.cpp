#include "semialg/varieties.hpp"

#include <algorithm>
#include <map>

#include "overloaded.hpp"
#include "semialg/errors.hpp"
#include "semialg/realroots.hpp"
#include "semialg/upoly.hpp"

namespace semialg {

namespace {

using detail::overloaded;

std::size_t rank_of(std::vector<std::vector<Rational>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

Rational nonzero_slope(Rng& rng) { return rng.nonzero_dyadic(10, 6); }

}  // namespace

std::string VarietySpec::kind_name() const {
  return std::visit(overloaded{
                        [](const CompleteIntersection&) { return std::string("complete_intersection"); },
                        [](const Hypersurface&) { return std::string("hypersurface"); },
                        [](const ParamCurve&) { return std::string("param_curve"); },
                        [](const ParamSurface&) { return std::string("param_surface"); },
                        [](const UnionOfAffineSubspaces&) { return std::string("affine_union"); },
                        [](const FullSpace&) { return std::string("full_space"); },
                    },
                    shape);
}

VarietySpec make_full_space(std::size_t n) { return VarietySpec{FullSpace{}, n, n, 1}; }

VarietySpec make_hypersurface(Polynomial q, std::size_t declared_deg) {
  std::size_t n = q.nvars();
  if (n == 0) throw InputError("hypersurface needs at least one variable");
  return VarietySpec{Hypersurface{std::move(q)}, n, n - 1, declared_deg};
}

VarietySpec make_param_curve(ParamCurve curve, std::size_t declared_deg) {
  std::size_t n = curve.numerators.size();
  return VarietySpec{std::move(curve), n, 1, declared_deg};
}

VarietySpec make_affine_union(std::vector<AffineMap> pieces, std::size_t dim) {
  if (pieces.empty()) throw InputError("affine union needs at least one piece");
  std::size_t n = pieces.front().codomain_dim;
  std::size_t count = pieces.size();
  return VarietySpec{UnionOfAffineSubspaces{std::move(pieces)}, n, dim, count};
}

VarietySpec unit_circle() {
  ParamCurve c;
  Polynomial t = Polynomial::variable(1, 0);
  Polynomial one = Polynomial::constant(1, 1);
  c.numerators = {one - t * t, t * Rational(2)};
  c.denominator = one + t * t;
  c.closed = true;
  return make_param_curve(std::move(c), 2);
}

BigInt bezout_degree(std::span<const unsigned> degrees) {
  BigInt prod = 1;
  for (unsigned d : degrees) {
    if (d < 1) throw InputError("bezout_degree: degrees must be >= 1");
    prod *= d;
  }
  return prod;
}

namespace {

std::size_t majority(const std::vector<std::size_t>& values) {
  std::map<std::size_t, unsigned> freq;
  for (auto v : values) ++freq[v];
  std::size_t best = 0;
  unsigned best_count = 0;
  bool tie = false;
  for (const auto& [v, c] : freq) {
    if (c > best_count) {
      best = v;
      best_count = c;
      tie = false;
    } else if (c == best_count) {
      tie = true;
    }
  }
  if (values.size() > 1 && (tie || best_count == 1)) {
    throw GenericityError("degree_by_slicing: slicing trials disagree; no generic slice found");
  }
  return best;
}

std::size_t hypersurface_slice_degree(const Polynomial& q, std::size_t n, Rng& rng) {
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(1));
  std::vector<Rational> off(n);
  for (std::size_t i = 0; i < n; ++i) {
    off[i] = rng.dyadic(8, 2);
    m[i][0] = nonzero_slope(rng);
  }
  Polynomial r = restrict(q, AffineMap(std::move(m), std::move(off)));
  return static_cast<std::size_t>(std::max(r.total_degree(), 0));
}

std::size_t curve_slice_degree(const ParamCurve& c, Rng& rng) {
  Polynomial h = c.denominator * rng.nonzero_dyadic(10, 6);
  for (const auto& num : c.numerators) h += num * nonzero_slope(rng);
  return static_cast<std::size_t>(std::max(h.total_degree(), 0));
}

}  // namespace

std::size_t degree_by_slicing(const VarietySpec& v, unsigned trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("degree_by_slicing: trials must be positive");
  Rng rng(seed);
  std::vector<std::size_t> values;
  std::size_t measured = std::visit(
      overloaded{
          [&](const Hypersurface& h) {
            for (unsigned k = 0; k < trials; ++k) {
              values.push_back(hypersurface_slice_degree(h.equation, v.ambient_dim, rng));
            }
            return majority(values);
          },
          [&](const ParamCurve& c) {
            for (unsigned k = 0; k < trials; ++k) values.push_back(curve_slice_degree(c, rng));
            return majority(values);
          },
          [&](const UnionOfAffineSubspaces& u) { return u.pieces.size(); },
          [&](const auto&) -> std::size_t {
            throw UnsupportedError("degree_by_slicing: unsupported variety kind " + v.kind_name());
          },
      },
      v.shape);
  if (measured != v.declared_deg) {
    throw InconsistencyError("degree mismatch: declared " + std::to_string(v.declared_deg) +
                             ", measured " + std::to_string(measured));
  }
  return measured;
}

bool affine_images_intersect(const AffineMap& a, const AffineMap& b) {
  if (a.codomain_dim != b.codomain_dim) throw InputError("affine maps live in different spaces");
  const std::size_t n = a.codomain_dim;
  const std::size_t cols = a.domain_dim + b.domain_dim;
  // A u - B v = b0 - a0
  std::vector<std::vector<Rational>> coef(n, std::vector<Rational>(cols));
  std::vector<std::vector<Rational>> aug(n, std::vector<Rational>(cols + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.domain_dim; ++j) coef[i][j] = a.matrix[i][j];
    for (std::size_t j = 0; j < b.domain_dim; ++j) coef[i][a.domain_dim + j] = -b.matrix[i][j];
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = coef[i][j];
    aug[i][cols] = b.offset[i] - a.offset[i];
  }
  return rank_of(coef) == rank_of(aug);
}

ValidationReport validate(const VarietySpec& v, std::uint64_t seed) {
  ValidationReport rep;
  auto fail = [&](std::string why) {
    rep.pass = false;
    rep.reasons.push_back(std::move(why));
  };
  if (v.declared_dim > v.ambient_dim) fail("declared_dim exceeds ambient_dim");
  if (v.declared_deg < 1) fail("declared_deg must be >= 1");
  const std::size_t n = v.ambient_dim;
  auto check_slicing = [&]() {
    try {
      degree_by_slicing(v, 5, seed);
    } catch (const InconsistencyError& e) {
      fail(e.what());
    } catch (const GenericityError& e) {
      fail(e.what());
    }
  };
  std::visit(
      overloaded{
          [&](const CompleteIntersection& ci) {
            if (ci.equations.empty()) fail("complete intersection needs equations");
            std::vector<unsigned> degs;
            for (const auto& e : ci.equations) {
              if (e.nvars() != n) fail("equation nvars differs from ambient_dim");
              if (e.total_degree() < 1) {
                fail("equations must be non-constant");
              } else {
                degs.push_back(static_cast<unsigned>(e.total_degree()));
              }
            }
            if (v.declared_dim + ci.equations.size() != n) {
              fail("declared_dim must equal ambient_dim minus the number of equations");
            }
            if (degs.size() == ci.equations.size() && BigInt(static_cast<unsigned long>(v.declared_deg)) > bezout_degree(degs)) {
              fail("declared_deg exceeds the Bezout bound");
            }
          },
          [&](const Hypersurface& h) {
            if (h.equation.nvars() != n) fail("equation nvars differs from ambient_dim");
            if (v.declared_dim + 1 != n) fail("hypersurface must have declared_dim = ambient_dim - 1");
            if (h.equation.total_degree() < 1) {
              fail("hypersurface equation must be non-constant");
              return;
            }
            if (static_cast<std::size_t>(h.equation.total_degree()) != v.declared_deg) {
              fail("degree mismatch: declared " + std::to_string(v.declared_deg) +
                   ", defining polynomial has degree " +
                   std::to_string(h.equation.total_degree()));
              return;
            }
            check_slicing();
          },
          [&](const ParamCurve& c) {
            if (c.numerators.size() != n) fail("curve map count differs from ambient_dim");
            if (v.declared_dim != 1) fail("parametrized curve must have declared_dim = 1");
            bool shapes_ok = c.denominator.nvars() == 1 && !c.denominator.is_zero();
            for (const auto& m : c.numerators) shapes_ok = shapes_ok && m.nvars() == 1;
            if (!shapes_ok) {
              fail("curve maps must be univariate and the denominator nonzero");
              return;
            }
            UPoly den = UPoly::from(c.denominator);
            if (den.degree() > 0 && !isolate_real_roots(den).empty()) {
              fail("curve denominator has a real root");
            }
            if (c.closed) {
              for (const auto& m : c.numerators) {
                if (m.total_degree() > c.denominator.total_degree()) {
                  fail("closed curve needs deg(numerator) <= deg(denominator)");
                  break;
                }
              }
              if (c.denominator.total_degree() == 0) fail("closed curve needs a non-constant denominator");
            }
            check_slicing();
          },
          [&](const ParamSurface& s) {
            if (s.maps.size() != n) fail("surface map count differs from ambient_dim");
            for (const auto& m : s.maps) {
              if (m.nvars() != 2) fail("surface maps must be bivariate");
            }
            if (v.declared_dim > 2) fail("parametrized surface has declared_dim <= 2");
          },
          [&](const UnionOfAffineSubspaces& u) {
            if (u.pieces.empty()) fail("affine union needs pieces");
            for (const auto& m : u.pieces) {
              if (m.codomain_dim != n) fail("subspace lives in the wrong ambient space");
              if (m.domain_dim != v.declared_dim || m.rank() != v.declared_dim) {
                fail("every subspace must have dimension declared_dim");
              }
            }
            if (u.pieces.size() != v.declared_deg) {
              fail("declared_deg must equal the number of subspaces");
            }
          },
          [&](const FullSpace&) {
            if (v.declared_dim != n) fail("full space has declared_dim = ambient_dim");
            if (v.declared_deg != 1) fail("full space has declared_deg = 1");
          },
      },
      v.shape);
  return rep;
}

// ---------------------------------------------------------------------- json

namespace {

Json poly_array(std::span<const Polynomial> ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

std::vector<Polynomial> polys_from(const Json& j) {
  if (!j.is_array()) throw InputError("expected an array of polynomials");
  std::vector<Polynomial> out;
  for (const auto& p : j) out.push_back(polynomial_from_json(p));
  return out;
}

std::size_t get_count(const Json& j, const char* key) {
  if (!j.contains(key) || !json_is_count(j[key])) {
    throw InputError(std::string("variety JSON needs non-negative integer '") + key + "'");
  }
  return j[key].get<std::size_t>();
}

}  // namespace

Json to_json(const VarietySpec& v) {
  Json j{{"kind", v.kind_name()},
         {"ambient_dim", v.ambient_dim},
         {"declared_dim", v.declared_dim},
         {"declared_deg", v.declared_deg}};
  std::visit(overloaded{
                 [&](const CompleteIntersection& ci) { j["equations"] = poly_array(ci.equations); },
                 [&](const Hypersurface& h) { j["equation"] = to_json(h.equation); },
                 [&](const ParamCurve& c) {
                   j["maps"] = poly_array(c.numerators);
                   j["denominator"] = to_json(c.denominator);
                   j["closed"] = c.closed;
                 },
                 [&](const ParamSurface& s) { j["maps"] = poly_array(s.maps); },
                 [&](const UnionOfAffineSubspaces& u) {
                   Json a = Json::array();
                   for (const auto& m : u.pieces) a.push_back(to_json(m));
                   j["subspaces"] = std::move(a);
                 },
                 [&](const FullSpace&) {},
             },
             v.shape);
  return j;
}

VarietySpec variety_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InputError("variety JSON needs a 'kind' string");
  }
  const std::string kind = j["kind"].get<std::string>();
  VarietySpec v;
  v.ambient_dim = get_count(j, "ambient_dim");
  v.declared_dim = get_count(j, "declared_dim");
  v.declared_deg = get_count(j, "declared_deg");
  if (kind == "complete_intersection") {
    v.shape = CompleteIntersection{polys_from(j.at("equations"))};
  } else if (kind == "hypersurface") {
    v.shape = Hypersurface{polynomial_from_json(j.at("equation"))};
  } else if (kind == "param_curve") {
    ParamCurve c;
    c.numerators = polys_from(j.at("maps"));
    if (j.contains("denominator")) c.denominator = polynomial_from_json(j["denominator"]);
    c.closed = j.value("closed", false);
    v.shape = std::move(c);
  } else if (kind == "param_surface") {
    v.shape = ParamSurface{polys_from(j.at("maps"))};
  } else if (kind == "affine_union") {
    UnionOfAffineSubspaces u;
    for (const auto& m : j.at("subspaces")) u.pieces.push_back(affine_map_from_json(m));
    v.shape = std::move(u);
  } else if (kind == "full_space") {
    v.shape = FullSpace{};
  } else {
    throw InputError("unknown variety kind '" + kind + "'");
  }
  return v;
}

Json to_json(const ValidationReport& r) {
  return Json{{"pass", r.pass}, {"reasons", r.reasons}};
}

}  // namespace semialg
