#include "semialg/realroots.hpp"

#include <algorithm>

#include "semialg/errors.hpp"

namespace semialg {

SturmChain::SturmChain(const UPoly& p) {
  if (p.is_zero()) throw InputError("Sturm chain of the zero polynomial");
  seq.push_back(p);
  UPoly d = p.derivative();
  if (d.is_zero()) return;
  seq.push_back(d);
  while (true) {
    UPoly r = -divmod(seq[seq.size() - 2], seq.back()).remainder;
    if (r.is_zero()) break;
    seq.push_back(std::move(r));
  }
}

int SturmChain::variations(const Rational& t) const {
  int count = 0;
  int last = 0;
  for (const auto& q : seq) {
    int s = q.sign_at(t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

std::size_t sturm_count(const UPoly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw InputError("sturm_count: zero polynomial");
  if (!(a < b)) throw InputError("sturm_count: need a < b");
  if (p.sign_at(a) == 0 || p.sign_at(b) == 0) {
    throw EndpointRootError("sturm_count: interval endpoint is a root; perturb the endpoint");
  }
  SturmChain chain(p);
  return static_cast<std::size_t>(chain.variations(a) - chain.variations(b));
}

std::size_t sturm_count(const Polynomial& p, const Rational& a, const Rational& b) {
  return sturm_count(UPoly::from(p), a, b);
}

// ------------------------------------------------------------------ RealRoot

void RealRoot::refine() {
  if (exact) return;
  Rational mid = (lo + hi) / 2;
  int sm = poly.sign_at(mid);
  if (sm == 0) {
    exact = mid;
    // Keep an honest isolating interval around the exact value.
    Rational h = (hi - lo) / 4;
    while (poly.sign_at(mid - h) == 0 || poly.sign_at(mid + h) == 0) h /= 2;
    lo = mid - h;
    hi = mid + h;
    return;
  }
  if (sm == poly.sign_at(lo)) {
    lo = mid;
  } else {
    hi = mid;
  }
}

void RealRoot::refine_to(const Rational& width) {
  while (!exact && hi - lo >= width) refine();
}

namespace {

struct Pending {
  Rational a;
  Rational b;
};

}  // namespace

std::vector<RealRoot> isolate_real_roots(const UPoly& p, const Interval& box) {
  if (p.is_zero()) throw InputError("isolate_roots: zero polynomial");
  if (!(box.lo < box.hi)) throw InputError("isolate_roots: empty box");
  UPoly q = squarefree_part(p);
  std::vector<RealRoot> out;
  if (q.degree() <= 0) return out;
  if (q.sign_at(box.lo) == 0 || q.sign_at(box.hi) == 0) {
    throw EndpointRootError("isolate_roots: box endpoint is a root");
  }
  SturmChain chain(q);
  // For squarefree q the count on (a, b] is V(a) - V(b) for any a < b: at a
  // root the zero entry is skipped and V(root) = V(root+).
  std::vector<Pending> stack{{box.lo, box.hi}};
  while (!stack.empty()) {
    Pending cur = stack.back();
    stack.pop_back();
    int va = chain.variations(cur.a);
    int vb = chain.variations(cur.b);
    int n = va - vb;
    if (n == 0) continue;
    // Piece ends are never roots: box ends, non-root midpoints or carve-out
    // bounds.
    if (n == 1) {
      out.push_back(RealRoot{q, cur.a, cur.b, std::nullopt});
      continue;
    }
    Rational mid = (cur.a + cur.b) / 2;
    if (q.sign_at(mid) == 0) {
      // Carve out a small non-root window around the exact root.
      Rational h = (cur.b - cur.a) / 4;
      while (true) {
        Rational lo = mid - h, hi = mid + h;
        if (q.sign_at(lo) != 0 && q.sign_at(hi) != 0 &&
            chain.variations(lo) - chain.variations(hi) == 1) {
          out.push_back(RealRoot{q, lo, hi, mid});
          stack.push_back({cur.a, lo});
          stack.push_back({hi, cur.b});
          break;
        }
        h /= 2;
      }
      continue;
    }
    stack.push_back({cur.a, mid});
    stack.push_back({mid, cur.b});
  }
  std::sort(out.begin(), out.end(), [](const RealRoot& x, const RealRoot& y) { return x.lo < y.lo; });
  return out;
}

std::vector<RealRoot> isolate_real_roots(const UPoly& p) {
  Rational b = root_bound(squarefree_part(p));
  return isolate_real_roots(p, Interval{-b, b});
}

std::vector<Interval> isolate_roots(const Polynomial& p, const Interval& box) {
  std::vector<Interval> out;
  for (const auto& r : isolate_real_roots(UPoly::from(p), box)) out.push_back({r.lo, r.hi});
  return out;
}

int compare(RealRoot& root, const Rational& x) {
  if (root.exact) {
    int c = cmp(*root.exact, x);
    return (c > 0) - (c < 0);
  }
  if (x <= root.lo) return 1;
  if (x >= root.hi) return -1;
  int sx = root.poly.sign_at(x);
  if (sx == 0) {
    root.exact = x;
    // Shrink to a window that still isolates.
    Rational h = std::min(x - root.lo, root.hi - x) / 2;
    while (root.poly.sign_at(x - h) == 0 || root.poly.sign_at(x + h) == 0) h /= 2;
    root.lo = x - h;
    root.hi = x + h;
    return 0;
  }
  if (sx == root.poly.sign_at(root.lo)) {
    root.lo = x;
    return 1;
  }
  root.hi = x;
  return -1;
}

int sign_at(const UPoly& g, RealRoot& root) {
  if (g.is_zero()) return 0;
  if (root.exact) return g.sign_at(*root.exact);
  if (g.degree() == 0) return sgn(g.leading());
  UPoly h = gcd(root.poly, g);
  if (h.degree() >= 1) {
    // h divides root.poly, so h is nonzero at lo and hi.
    if (sturm_count(h, root.lo, root.hi) > 0) return 0;
  }
  UPoly gs = squarefree_part(g);
  SturmChain chain(gs);
  while (true) {
    if (root.exact) return g.sign_at(*root.exact);
    if (gs.sign_at(root.lo) != 0 && gs.sign_at(root.hi) != 0 &&
        chain.variations(root.lo) == chain.variations(root.hi)) {
      return g.sign_at(root.lo);
    }
    root.refine();
  }
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  // Stern-Brocot descent via continued fractions.
  if (lo > hi) return simplest_rational_between(hi, lo);
  if (lo <= 0 && hi >= 0) return Rational(0);
  if (hi < 0) return -simplest_rational_between(-hi, -lo);
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  Rational f(fl);
  if (f == lo) return lo;
  if (f + 1 <= hi) return f + 1;
  // lo, hi in (f, f + 1): recurse on reciprocals of the fractional parts.
  Rational inner = simplest_rational_between(1 / (hi - f), 1 / (lo - f));
  return f + 1 / inner;
}

std::optional<Rational> rational_value(RealRoot& root) {
  if (root.exact) return root.exact;
  // Clear denominators to get the integer leading coefficient.
  BigInt lcm_den = 1;
  for (const auto& c : root.poly.coeffs()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  }
  BigInt content = 0;
  for (const auto& c : root.poly.coeffs()) {
    BigInt v = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  BigInt lc = root.poly.leading().get_num() * (lcm_den / root.poly.leading().get_den()) / content;
  lc = abs(lc);
  Rational width(BigInt(1), lc * lc * 2);
  width.canonicalize();
  root.refine_to(width);
  if (root.exact) return root.exact;
  Rational cand = simplest_rational_between(root.lo, root.hi);
  if (root.poly.sign_at(cand) == 0) {
    compare(root, cand);
    return cand;
  }
  return std::nullopt;
}

}  // namespace semialg
