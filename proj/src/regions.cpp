#include "semialg/regions.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <numeric>
#include <thread>

#include "overloaded.hpp"
#include "semialg/errors.hpp"
#include "semialg/upoly.hpp"

namespace semialg {

using detail::overloaded;

// ------------------------------------------------------------------ family

PolyFamily::PolyFamily(std::size_t nvars, std::vector<Polynomial> polys)
    : nvars_(nvars), polys_(std::move(polys)) {
  for (const auto& p : polys_) {
    if (p.nvars() != nvars_) throw InputError("family polynomials must share nvars");
  }
}

int PolyFamily::d() const {
  int d = 0;
  for (const auto& p : polys_) d = std::max(d, p.total_degree());
  return d;
}

std::string sign_string(const SignVector& v) {
  std::string s;
  for (int e : v) s.push_back(e > 0 ? '+' : (e < 0 ? '-' : '0'));
  return s;
}

SignVector parse_sign_string(std::string_view text) {
  SignVector v;
  for (char c : text) {
    if (c == '+') {
      v.push_back(1);
    } else if (c == '-') {
      v.push_back(-1);
    } else if (c == '0') {
      v.push_back(0);
    } else {
      throw InputError("sign strings use '+', '-' and '0'");
    }
  }
  return v;
}

std::string pattern_string(const Pattern& p) {
  std::string s;
  for (int e : p) s.push_back(e ? '1' : '0');
  return s;
}

std::size_t RegionAtlas::total_components() const {
  std::size_t n = 0;
  for (const auto& [k, c] : cells) n += c.component_count;
  return n;
}

std::set<SignVector> RegionAtlas::sign_vectors() const {
  std::set<SignVector> out;
  for (const auto& [k, c] : cells) out.insert(k);
  return out;
}

std::map<SignVector, std::size_t> RegionAtlas::counts() const {
  std::map<SignVector, std::size_t> out;
  for (const auto& [k, c] : cells) out[k] = c.component_count;
  return out;
}

// ------------------------------------------------------------------ pieces

std::vector<SamplingPiece> sampling_pieces(const VarietySpec& v) {
  auto identity_maps = [](std::size_t n) {
    std::vector<Polynomial> maps;
    for (std::size_t i = 0; i < n; ++i) maps.push_back(Polynomial::variable(n, i));
    return maps;
  };
  return std::visit(
      overloaded{
          [&](const ParamCurve& c) -> std::vector<SamplingPiece> {
            return {CurvePiece{c.numerators, c.denominator, c.closed, v.declared_deg}};
          },
          [&](const ParamSurface& s) -> std::vector<SamplingPiece> { return {GridPiece{2, s.maps}}; },
          [&](const UnionOfAffineSubspaces& u) -> std::vector<SamplingPiece> {
            for (std::size_t a = 0; a < u.pieces.size(); ++a) {
              for (std::size_t b = a + 1; b < u.pieces.size(); ++b) {
                if (affine_images_intersect(u.pieces[a], u.pieces[b])) {
                  throw UnsupportedError("affine pieces must be pairwise disjoint");
                }
              }
            }
            std::vector<SamplingPiece> out;
            for (const auto& m : u.pieces) {
              if (m.domain_dim == 1) {
                out.push_back(CurvePiece{m.coordinate_polynomials(), Polynomial::constant(1, 1), false, 1});
              } else if (m.domain_dim <= 3) {
                out.push_back(GridPiece{m.domain_dim, m.coordinate_polynomials()});
              } else {
                throw UnsupportedError("affine pieces of dimension above 3 are not sampled");
              }
            }
            return out;
          },
          [&](const FullSpace&) -> std::vector<SamplingPiece> {
            const std::size_t n = v.ambient_dim;
            if (n == 1) {
              return {CurvePiece{identity_maps(1), Polynomial::constant(1, 1), false, 1}};
            }
            if (n > 3) throw UnsupportedError("full space sampling needs ambient_dim <= 3");
            return {GridPiece{n, identity_maps(n)}};
          },
          [&](const auto&) -> std::vector<SamplingPiece> {
            throw UnsupportedError("variety kind " + v.kind_name() +
                                   " has no parametrization; supply sampling pieces");
          },
      },
      v.shape);
}

// ---------------------------------------------------------------- sampling

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // The smaller index stays the root so representatives are the first
    // node of each class.
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Signs of all nodes of one piece, flattened row-major, plus the merged
// classes and the bookkeeping for the next refinement.
struct PieceResult {
  std::size_t s = 0;
  std::vector<signed char> signs;
  UnionFind classes{0};
  std::function<Witness(std::size_t)> witness;
  std::vector<Rational> proposals;
  std::size_t gaps = 0;

  std::size_t classes_size = 0;

  bool same(std::size_t a, std::size_t b) const {
    return std::equal(signs.begin() + a * s, signs.begin() + (a + 1) * s, signs.begin() + b * s);
  }
  void link(std::size_t a, std::size_t b) {
    if (same(a, b)) classes.unite(a, b);
  }
  SignVector vector_at(std::size_t i) const {
    return SignVector(signs.begin() + i * s, signs.begin() + (i + 1) * s);
  }
};

std::vector<Rational> point_on(const std::vector<Polynomial>& num, const Polynomial& den,
                               const Rational& t) {
  std::vector<Rational> x{t};
  Rational dv = evaluate(den, x);
  std::vector<Rational> out;
  for (const auto& n : num) out.push_back(evaluate(n, x) / dv);
  return out;
}

struct CurveRestriction {
  std::vector<Polynomial> num;
  Polynomial den;
  // Cleared-denominator restriction of each family member; the zero
  // polynomial when the member vanishes on the whole curve.
  std::vector<UPoly> f;
  // Squarefree product of the non-constant restrictions.
  UPoly critical;
};

CurveRestriction restrict_to_curve(const PolyFamily& fam, const CurvePiece& c) {
  if (c.numerators.size() != fam.nvars()) {
    throw InputError("family nvars differs from the curve's ambient dimension");
  }
  CurveRestriction r{c.numerators, c.denominator, {}, UPoly::constant(1)};
  if (UPoly::from(r.den).sign_at(0) < 0) {
    r.den = -r.den;
    for (auto& n : r.num) n = -n;
  }
  UPoly prod = UPoly::constant(1);
  for (const auto& p : fam.polys()) {
    int deg = std::max(p.total_degree(), 0);
    UPoly fk = UPoly::from(compose_rational(p, r.num, r.den, deg));
    if (fk.degree() >= 1) prod = prod * fk;
    r.f.push_back(std::move(fk));
  }
  if (prod.degree() >= 1) r.critical = squarefree_part(prod);
  return r;
}

std::vector<Rational> limit_point(const CurveRestriction& r) {
  const int m = r.den.total_degree();
  UPoly den = UPoly::from(r.den);
  std::vector<Rational> out;
  for (const auto& n : r.num) {
    UPoly un = UPoly::from(n);
    if (un.degree() > m) throw InputError("closed curve needs deg(numerator) <= deg(denominator)");
    out.push_back(un.coeff(static_cast<std::size_t>(m)) / den.leading());
  }
  return out;
}

Interval fit_box(const std::vector<Interval>& box, std::size_t axis) {
  if (box.empty()) return {Rational(-1), Rational(1)};
  if (axis >= box.size()) throw InputError("box has fewer intervals than the piece has parameters");
  if (!(box[axis].lo < box[axis].hi)) throw InputError("box intervals need lo < hi");
  return box[axis];
}

PieceResult sample_curve(std::size_t index, const PolyFamily& fam, const CurvePiece& c,
                         const std::vector<Interval>& box, std::size_t resolution,
                         const std::vector<Rational>& extras, std::uint64_t budget) {
  CurveRestriction r = restrict_to_curve(fam, c);
  const std::size_t s = fam.s();
  std::vector<RealRoot> roots;
  Rational bound(1);
  if (r.critical.degree() >= 1) {
    roots = isolate_real_roots(r.critical);
    bound = root_bound(r.critical);
  }
  Interval b = fit_box(box, 0);
  Rational neg = -bound;
  Rational lo = std::min(b.lo, neg), hi = std::max(b.hi, bound);

  std::set<Rational> grid(extras.begin(), extras.end());
  for (std::size_t i = 0; i <= resolution; ++i) {
    grid.insert(lo + (hi - lo) * Rational(static_cast<unsigned long>(i)) /
                         Rational(static_cast<unsigned long>(resolution)));
  }
  if (grid.size() + roots.size() > budget) throw BudgetError("curve sampling exceeds the node budget");

  std::vector<Rational> plain;
  for (const auto& t : grid) {
    if (r.critical.degree() >= 1 && r.critical.sign_at(t) == 0) {
      // The sample is a critical parameter; pin its root instead.
      for (auto& root : roots) {
        if (!root.exact && root.lo < t && t < root.hi) compare(root, t);
      }
      continue;
    }
    plain.push_back(t);
  }

  auto result = std::make_shared<std::vector<Witness>>();
  PieceResult out;
  out.s = s;
  std::vector<bool> critical;
  auto push = [&](const SignVector& sv, Witness w, bool crit) {
    for (int e : sv) out.signs.push_back(static_cast<signed char>(e));
    w.piece = index;
    result->push_back(std::move(w));
    critical.push_back(crit);
  };
  auto root_node = [&](RealRoot& root) {
    SignVector sv(s);
    for (std::size_t k = 0; k < s; ++k) sv[k] = r.f[k].is_zero() ? 0 : sign_at(r.f[k], root);
    Witness w;
    w.root = root;
    if (root.exact) w.point = point_on(r.num, r.den, *root.exact);
    push(sv, std::move(w), true);
  };
  std::size_t j = 0;
  for (const auto& t : plain) {
    while (j < roots.size() && compare(roots[j], t) < 0) root_node(roots[j++]);
    SignVector sv(s);
    for (std::size_t k = 0; k < s; ++k) sv[k] = r.f[k].is_zero() ? 0 : r.f[k].sign_at(t);
    Witness w;
    w.params = {t};
    w.point = point_on(r.num, r.den, t);
    push(sv, std::move(w), false);
  }
  while (j < roots.size()) root_node(roots[j++]);

  const std::size_t finite = result->size();
  if (c.closed) {
    std::vector<Rational> lp = limit_point(r);
    SignVector sv(s);
    bool crit = false;
    for (std::size_t k = 0; k < s; ++k) {
      sv[k] = r.f[k].is_zero() ? 0 : sign(evaluate(fam.polys()[k], lp));
      crit = crit || (!r.f[k].is_zero() && sv[k] == 0);
    }
    Witness w;
    w.at_infinity = true;
    w.point = lp;
    push(sv, std::move(w), crit);
  }

  const std::size_t n = result->size();
  out.classes = UnionFind(n);
  out.classes_size = n;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < finite; ++i) edges.emplace_back(i, i + 1);
  if (c.closed && finite > 0) {
    edges.emplace_back(finite - 1, finite);
    edges.emplace_back(finite, 0);
  }
  for (auto [a, bnode] : edges) {
    out.link(a, bnode);
    if (!(critical[a] && critical[bnode])) continue;
    ++out.gaps;
    const Witness& wa = (*result)[a];
    const Witness& wb = (*result)[bnode];
    if (wa.root && wb.root) {
      out.proposals.push_back((wa.root->hi + wb.root->lo) / 2);
    } else if (wa.root && wb.at_infinity) {
      out.proposals.push_back(wa.root->hi + 1);
    } else if (wa.at_infinity && wb.root) {
      out.proposals.push_back(wb.root->lo - 1);
    }
  }
  out.witness = [result](std::size_t i) { return (*result)[i]; };
  return out;
}

struct SliceRoots {
  std::vector<RealRoot> roots;
};

SliceRoots oval_slice(const OvalPiece& o, const Rational& x) {
  UPoly slice = slice_at_x(o.q, x);
  if (slice.is_zero()) throw UnsupportedError("oval equation vanishes on a whole vertical line");
  if (slice.degree() < 1) return {};
  try {
    return {isolate_real_roots(slice, o.y_window)};
  } catch (const EndpointRootError&) {
    throw UnsupportedError("oval meets the boundary of its y-window");
  }
}

int slice_count(const OvalPiece& o, const Rational& x) { return static_cast<int>(oval_slice(o, x).roots.size()); }

PieceResult sample_oval(std::size_t index, const PolyFamily& fam, const OvalPiece& o,
                        std::size_t resolution, const std::vector<Rational>& extras,
                        std::uint64_t budget) {
  if (fam.nvars() != 2 || o.q.nvars() != 2) throw InputError("oval pieces live in the plane");
  const std::size_t s = fam.s();

  std::set<Rational> crit;
  for (const auto& p : fam.polys()) {
    if (p.total_degree() < 1) continue;
    UPoly rk = p.degree_in(1) <= 0 ? as_univariate_in(p, 0) : resultant_in_y(o.q, p);
    if (rk.is_zero()) throw UnsupportedError("family member shares a component with the oval");
    if (rk.degree() < 1) continue;
    std::vector<RealRoot> roots;
    try {
      roots = isolate_real_roots(rk, o.x_window);
    } catch (const EndpointRootError&) {
      throw UnsupportedError("critical abscissa on the x-window boundary");
    }
    for (auto& root : roots) {
      auto v = rational_value(root);
      if (!v) throw UnsupportedError("oval sampling needs rational critical abscissas");
      crit.insert(*v);
    }
  }

  std::set<Rational> xs(extras.begin(), extras.end());
  xs.insert(crit.begin(), crit.end());
  xs.insert(o.center_x);
  const Rational width = o.x_window.hi - o.x_window.lo;
  for (std::size_t i = 0; i <= resolution; ++i) {
    xs.insert(o.x_window.lo + width * Rational(static_cast<unsigned long>(i)) /
                                  Rational(static_cast<unsigned long>(resolution)));
  }
  if (2 * xs.size() > budget) throw BudgetError("oval sampling exceeds the node budget");

  std::vector<Rational> abscissas(xs.begin(), xs.end());
  std::vector<Rational> rooted;
  std::vector<std::vector<RealRoot>> slices;
  std::size_t first = abscissas.size(), last = 0;
  for (std::size_t i = 0; i < abscissas.size(); ++i) {
    auto sr = oval_slice(o, abscissas[i]);
    if (sr.roots.empty()) continue;
    if (sr.roots.size() > 2) throw UnsupportedError("vertical slice meets the window in more than two points");
    if (first != abscissas.size() && i != last + 1) {
      throw UnsupportedError("oval slices are not contiguous in x");
    }
    if (first == abscissas.size()) first = i;
    last = i;
    rooted.push_back(abscissas[i]);
    slices.push_back(std::move(sr.roots));
  }
  if (rooted.empty()) throw UnsupportedError("no sample slice meets the oval");
  if (first == 0 || last + 1 == abscissas.size()) {
    throw UnsupportedError("oval reaches the boundary of its x-window");
  }
  const std::size_t m = rooted.size();
  // A single-root slice is a vertical tangent, possible only at the two
  // x-extremes where the bottom and top arcs meet.
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (slices[i].size() == 1) throw GenericityError("interior vertical slice is tangent to the oval");
  }
  const bool left_tangent = slices[0].size() == 1;
  const bool right_tangent = slices[m - 1].size() == 1;
  if (m == 1 && left_tangent) throw GenericityError("oval sampled only at a tangent slice");

  auto result = std::make_shared<std::vector<Witness>>();
  PieceResult out;
  out.s = s;
  std::vector<bool> critical;
  auto add_node = [&](const Rational& x, const RealRoot& y) {
    RealRoot yr = y;
    for (const auto& p : fam.polys()) {
      int e = 0;
      if (!p.is_zero()) {
        UPoly ps = slice_at_x(p, x);
        e = ps.is_zero() ? 0 : sign_at(ps, yr);
      }
      out.signs.push_back(static_cast<signed char>(e));
    }
    Witness w;
    w.piece = index;
    w.params = {x};
    w.root = yr;
    if (yr.exact) w.point = std::vector<Rational>{x, *yr.exact};
    result->push_back(std::move(w));
    critical.push_back(crit.count(x) > 0);
  };
  // Bottom arc left to right, then the top arc right to left.
  for (std::size_t i = 0; i < m; ++i) add_node(rooted[i], slices[i][0]);
  for (std::size_t i = m; i-- > 0;) {
    if (slices[i].size() == 2) add_node(rooted[i], slices[i][1]);
  }

  const std::size_t n = result->size();
  out.classes = UnionFind(n);
  out.classes_size = n;
  for (std::size_t i = 0; i < n; ++i) out.link(i, (i + 1) % n);

  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (crit.count(rooted[i]) && crit.count(rooted[i + 1])) {
      out.gaps += 2;
      out.proposals.push_back((rooted[i] + rooted[i + 1]) / 2);
    }
  }
  // Around the two x-extremes the arc joining bottom and top is unsampled;
  // bisect toward the neighbouring rootless abscissa for a rooted sample.
  auto close_wrap = [&](const Rational& inner, Rational outer) {
    ++out.gaps;
    for (int step = 0; step < 256; ++step) {
      Rational mid = (inner + outer) / 2;
      if (slice_count(o, mid) == 2) {
        out.proposals.push_back(mid);
        return;
      }
      outer = mid;
    }
  };
  if (crit.count(rooted[m - 1]) && !right_tangent) close_wrap(rooted[m - 1], abscissas[last + 1]);
  if (crit.count(rooted[0]) && !left_tangent) close_wrap(rooted[0], abscissas[first - 1]);

  out.witness = [result](std::size_t i) { return (*result)[i]; };
  return out;
}

PieceResult sample_grid(std::size_t index, const PolyFamily& fam, const GridPiece& g,
                        const std::vector<Interval>& box, std::size_t resolution,
                        const AtlasOptions& options) {
  if (g.maps.size() != fam.nvars()) throw InputError("grid maps do not match the family's nvars");
  const std::size_t k = g.params;
  for (const auto& m : g.maps) {
    if (m.nvars() != k) throw InputError("grid maps must use exactly the piece's parameters");
  }
  std::vector<Interval> axes;
  for (std::size_t a = 0; a < k; ++a) axes.push_back(fit_box(box, a));

  const std::size_t side = resolution + 1;
  std::uint64_t total = 1;
  for (std::size_t a = 0; a < k; ++a) {
    total *= side;
    if (total > options.budget) throw BudgetError("grid sampling exceeds the node budget");
  }
  const std::size_t n = static_cast<std::size_t>(total);
  const std::size_t s = fam.s();

  std::vector<Polynomial> pulled;
  for (const auto& p : fam.polys()) pulled.push_back(compose(p, g.maps));

  auto coords = [axes, side, resolution, k](std::size_t idx) {
    std::vector<Rational> x(k);
    for (std::size_t a = 0; a < k; ++a) {
      std::size_t digit = idx % side;
      idx /= side;
      x[a] = axes[a].lo + (axes[a].hi - axes[a].lo) * Rational(static_cast<unsigned long>(digit)) /
                              Rational(static_cast<unsigned long>(resolution));
    }
    return x;
  };

  PieceResult out;
  out.s = s;
  out.signs.assign(n * s, 0);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::vector<Rational> x = coords(idx);
      for (std::size_t j = 0; j < s; ++j) {
        out.signs[idx * s + j] = static_cast<signed char>(sign(evaluate(pulled[j], x)));
      }
    }
  };
  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || n < 1024) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      std::size_t b = t * chunk, e = std::min(n, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& th : pool) th.join();
  }

  out.classes = UnionFind(n);
  out.classes_size = n;
  std::size_t stride = 1;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t idx = 0; idx < n; ++idx) {
      if ((idx / stride) % side + 1 < side) out.link(idx, idx + stride);
    }
    stride *= side;
  }
  auto maps = g.maps;
  out.witness = [coords, maps, index](std::size_t i) {
    Witness w;
    w.piece = index;
    w.params = coords(i);
    std::vector<Rational> pt;
    for (const auto& m : maps) pt.push_back(evaluate(m, w.params));
    w.point = std::move(pt);
    return w;
  };
  return out;
}

void compute(RegionAtlas& atlas) {
  if (atlas.resolution < 8) throw InputError("resolution must be at least 8");
  atlas.cells.clear();
  atlas.pending_gaps = 0;
  atlas.extra_samples.resize(atlas.pieces.size());
  atlas.proposed_samples.assign(atlas.pieces.size(), {});
  for (std::size_t i = 0; i < atlas.pieces.size(); ++i) {
    PieceResult r = std::visit(
        overloaded{
            [&](const CurvePiece& c) {
              return sample_curve(i, atlas.family, c, atlas.box, atlas.resolution,
                                  atlas.extra_samples[i], atlas.options.budget);
            },
            [&](const OvalPiece& o) {
              return sample_oval(i, atlas.family, o, atlas.resolution, atlas.extra_samples[i],
                                 atlas.options.budget);
            },
            [&](const GridPiece& g) {
              return sample_grid(i, atlas.family, g, atlas.box, atlas.resolution, atlas.options);
            },
        },
        atlas.pieces[i]);
    for (std::size_t node = 0; node < r.classes_size; ++node) {
      if (r.classes.find(node) != node) continue;
      CellInfo& cell = atlas.cells[r.vector_at(node)];
      ++cell.component_count;
      cell.witnesses.push_back(r.witness(node));
    }
    atlas.pending_gaps += r.gaps;
    atlas.proposed_samples[i] = std::move(r.proposals);
  }
}

}  // namespace

RegionAtlas enumerate_sign_conditions(const PolyFamily& family, const VarietySpec& v,
                                      std::vector<SamplingPiece> pieces,
                                      const std::vector<Interval>& box, std::size_t resolution,
                                      std::uint64_t seed, const AtlasOptions& options) {
  if (family.nvars() != v.ambient_dim) throw InputError("family nvars differs from ambient_dim");
  RegionAtlas atlas;
  atlas.variety = v;
  atlas.family = family;
  atlas.pieces = std::move(pieces);
  atlas.box = box;
  atlas.resolution = resolution;
  atlas.seed = seed;
  atlas.options = options;
  compute(atlas);
  return atlas;
}

RegionAtlas enumerate_sign_conditions(const PolyFamily& family, const VarietySpec& v,
                                      const std::vector<Interval>& box, std::size_t resolution,
                                      std::uint64_t seed, const AtlasOptions& options) {
  return enumerate_sign_conditions(family, v, sampling_pieces(v), box, resolution, seed, options);
}

RegionAtlas refine(const RegionAtlas& atlas) {
  RegionAtlas next = atlas;
  next.resolution = atlas.resolution * 2;
  for (std::size_t i = 0; i < next.pieces.size(); ++i) {
    auto& ex = next.extra_samples[i];
    ex.insert(ex.end(), atlas.proposed_samples[i].begin(), atlas.proposed_samples[i].end());
    std::sort(ex.begin(), ex.end());
    ex.erase(std::unique(ex.begin(), ex.end()), ex.end());
  }
  compute(next);
  next.converged = next.pending_gaps == 0 && next.counts() == atlas.counts();
  return next;
}

RegionAtlas refine_until_converged(RegionAtlas atlas, std::size_t max_resolution) {
  while (!atlas.converged) {
    if (atlas.resolution * 2 > max_resolution) {
      throw BudgetError("no convergence up to resolution " + std::to_string(max_resolution));
    }
    atlas = refine(atlas);
  }
  return atlas;
}

// -------------------------------------------------------------- witnesses

SignVector witness_signs(const PolyFamily& family, const SamplingPiece& piece, const Witness& w) {
  SignVector out;
  auto at_point = [&](const std::vector<Rational>& x) {
    for (const auto& p : family.polys()) out.push_back(sign(evaluate(p, x)));
  };
  if (w.point) {
    at_point(*w.point);
    return out;
  }
  std::visit(overloaded{
                 [&](const CurvePiece& c) {
                   if (!w.root) throw InputError("curve witness without a parameter");
                   CurveRestriction r = restrict_to_curve(family, c);
                   for (const auto& fk : r.f) {
                     RealRoot t = *w.root;
                     out.push_back(fk.is_zero() ? 0 : sign_at(fk, t));
                   }
                 },
                 [&](const OvalPiece&) {
                   if (!w.root || w.params.size() != 1) throw InputError("oval witness needs (x, root)");
                   for (const auto& p : family.polys()) {
                     UPoly ps = slice_at_x(p, w.params[0]);
                     RealRoot y = *w.root;
                     out.push_back(ps.is_zero() ? 0 : sign_at(ps, y));
                   }
                 },
                 [&](const GridPiece& g) {
                   std::vector<Rational> pt;
                   for (const auto& m : g.maps) pt.push_back(evaluate(m, w.params));
                   at_point(pt);
                 },
             },
             piece);
  return out;
}

namespace {

bool on_piece(const SamplingPiece& piece, const Witness& w) {
  return std::visit(overloaded{
                        [&](const CurvePiece& c) {
                          if (w.at_infinity || !w.params.empty() || !w.point) return true;
                          // Algebraic parameter with an exact value: the point
                          // must be the image of that value.
                          return *w.point == point_on(c.numerators, c.denominator, *w.root->exact);
                        },
                        [&](const OvalPiece& o) {
                          if (!w.root || w.params.size() != 1) return false;
                          RealRoot y = *w.root;
                          return sign_at(slice_at_x(o.q, w.params[0]), y) == 0;
                        },
                        [&](const GridPiece&) { return true; },
                    },
                    piece);
}

}  // namespace

bool verify_atlas(const RegionAtlas& atlas) {
  for (const auto& [key, cell] : atlas.cells) {
    if (cell.witnesses.size() != cell.component_count) return false;
    for (const auto& w : cell.witnesses) {
      if (w.piece >= atlas.pieces.size()) return false;
      const SamplingPiece& piece = atlas.pieces[w.piece];
      if (!on_piece(piece, w)) return false;
      if (witness_signs(atlas.family, piece, w) != key) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- patterns

PatternMap enumerate_patterns(const PolyFamily& family, const VarietySpec& v) {
  if (family.nvars() != v.ambient_dim) throw InputError("family nvars differs from ambient_dim");
  std::vector<SamplingPiece> pieces;
  try {
    pieces = sampling_pieces(v);
  } catch (const UnsupportedError&) {
    throw UnsupportedError("pattern enumeration needs a curve variety");
  }
  PatternMap out;
  const std::size_t s = family.s();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto* c = std::get_if<CurvePiece>(&pieces[i]);
    if (!c) throw UnsupportedError("pattern enumeration needs 1-dimensional pieces");
    CurveRestriction r = restrict_to_curve(family, *c);
    Pattern generic(s);
    for (std::size_t k = 0; k < s; ++k) generic[k] = r.f[k].is_zero() ? 0 : 1;

    Rational beyond(1);
    if (r.critical.degree() >= 1) {
      beyond = root_bound(r.critical);
      for (auto& root : isolate_real_roots(r.critical)) {
        Pattern pat = generic;
        for (std::size_t k = 0; k < s; ++k) {
          if (pat[k] && sign_at(r.f[k], root) == 0) pat[k] = 0;
        }
        Witness w;
        w.piece = i;
        w.root = root;
        if (root.exact) w.point = point_on(r.num, r.den, *root.exact);
        PatternCell& cell = out[pat];
        cell.points.push_back(std::move(w));
        cell.closure_degree += 1;
      }
    }
    if (c->closed) {
      std::vector<Rational> lp = limit_point(r);
      Pattern pat = generic;
      for (std::size_t k = 0; k < s; ++k) {
        if (pat[k] && evaluate(family.polys()[k], lp) == 0) pat[k] = 0;
      }
      if (pat != generic) {
        Witness w;
        w.piece = i;
        w.at_infinity = true;
        w.point = lp;
        PatternCell& cell = out[pat];
        cell.points.push_back(std::move(w));
        cell.closure_degree += 1;
      }
    }
    Witness w;
    w.piece = i;
    w.params = {beyond};
    w.point = point_on(r.num, r.den, beyond);
    PatternCell& cell = out[generic];
    cell.points.push_back(std::move(w));
    cell.closure_degree += static_cast<unsigned long>(c->degree);
  }
  return out;
}

BigInt closure_degree_sum(const PatternMap& patterns) {
  BigInt total = 0;
  for (const auto& [p, cell] : patterns) total += cell.closure_degree;
  return total;
}

// -------------------------------------------------------------------- json

Json to_json(const PolyFamily& f) {
  Json polys = Json::array();
  for (const auto& p : f.polys()) polys.push_back(to_json(p));
  return Json{{"nvars", f.nvars()}, {"polys", std::move(polys)}};
}

PolyFamily poly_family_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nvars") || !json_is_count(j["nvars"])) {
    throw InputError("family JSON needs 'nvars'");
  }
  std::vector<Polynomial> polys;
  if (j.contains("polys")) {
    if (!j["polys"].is_array()) throw InputError("family 'polys' must be an array");
    for (const auto& p : j["polys"]) polys.push_back(polynomial_from_json(p));
  }
  return PolyFamily(j["nvars"].get<std::size_t>(), std::move(polys));
}

Json to_json(const Witness& w) {
  Json j{{"piece", w.piece}, {"param", to_json(w.params)}, {"at_infinity", w.at_infinity}};
  if (w.root) {
    j["root"] = Json{{"poly", to_json(w.root->poly.coeffs())},
                     {"interval", {to_string(w.root->lo), to_string(w.root->hi)}},
                     {"exact", w.root->exact ? Json(to_string(*w.root->exact)) : Json(nullptr)}};
  } else {
    j["root"] = nullptr;
  }
  j["point"] = w.point ? to_json(*w.point) : Json(nullptr);
  return j;
}

Json to_json(const RegionAtlas& atlas) {
  Json cells = Json::array();
  for (const auto& [key, cell] : atlas.cells) {
    Json ws = Json::array();
    for (const auto& w : cell.witnesses) ws.push_back(to_json(w));
    cells.push_back(Json{{"signs", sign_string(key)},
                         {"component_count", cell.component_count},
                         {"witnesses", std::move(ws)}});
  }
  return Json{{"variety", atlas.variety.kind_name()},
              {"ambient_dim", atlas.variety.ambient_dim},
              {"s", atlas.family.s()},
              {"d", atlas.family.d()},
              {"resolution", atlas.resolution},
              {"converged", atlas.converged},
              {"pending_gaps", atlas.pending_gaps},
              {"total_components", atlas.total_components()},
              {"cells", std::move(cells)}};
}

Json to_json(const PatternMap& patterns) {
  Json cells = Json::array();
  for (const auto& [pat, cell] : patterns) {
    Json pts = Json::array();
    for (const auto& w : cell.points) pts.push_back(to_json(w));
    cells.push_back(Json{{"pattern", pattern_string(pat)},
                         {"closure_degree", json_integer(cell.closure_degree)},
                         {"points", std::move(pts)}});
  }
  return Json{{"patterns", std::move(cells)},
              {"closure_degree_sum", json_integer(closure_degree_sum(patterns))}};
}

}  // namespace semialg
