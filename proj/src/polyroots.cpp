#include "posys/polyroots.hpp"

#include <algorithm>
#include <stdexcept>

namespace posys::polyroots {

namespace {

// Polynomial remainder of a by b (b nonzero).
RatPoly rem(RatPoly a, const RatPoly& b) {
  a = trim(std::move(a));
  int db = degree(b);
  if (db < 0) throw std::invalid_argument("rem: division by zero polynomial");
  while (degree(a) >= db) {
    int da = degree(a);
    Rat f = a[da] / b[db];
    for (int i = 0; i <= db; ++i) a[da - db + i] -= f * b[i];
    a[da] = 0;
    a = trim(std::move(a));
  }
  return a;
}

RatPoly divide_exact(const RatPoly& a, const RatPoly& b) {
  RatPoly r = trim(a), q;
  int db = degree(b);
  if (db < 0) throw std::invalid_argument("divide_exact: zero divisor");
  int da = degree(r);
  if (da < db) return {};
  q.assign(da - db + 1, Rat(0));
  while (degree(r) >= db) {
    int dr = degree(r);
    Rat f = r[dr] / b[db];
    q[dr - db] = f;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
    r = trim(std::move(r));
  }
  return q;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!is_zero(b)) {
    RatPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!is_zero(a)) {
    Rat lead = a[degree(a)];
    for (Rat& c : a) c /= lead;
  }
  return a;
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
  std::vector<RatPoly> chain;
  chain.push_back(trim(p));
  chain.push_back(derivative(chain[0]));
  while (!is_zero(chain.back())) {
    RatPoly r = rem(chain[chain.size() - 2], chain.back());
    for (Rat& c : r) c = -c;
    if (is_zero(r)) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_variations(const std::vector<RatPoly>& chain, const Rat& x) {
  int count = 0, last = 0;
  for (const RatPoly& p : chain) {
    int s = sign_of(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

RatPoly trim(RatPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

int degree(const RatPoly& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (p[i] != 0) return static_cast<int>(i);
  return -1;
}

bool is_zero(const RatPoly& p) { return degree(p) < 0; }

Rat eval(const RatPoly& p, const Rat& x) {
  Rat v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
  return v;
}

double eval(const RatPoly& p, double x) {
  double v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * x + to_double(p[i]);
  return v;
}

RatPoly derivative(const RatPoly& p) {
  if (p.size() <= 1) return {};
  RatPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rat(static_cast<long>(i));
  return d;
}

RatPoly add(const RatPoly& a, const RatPoly& b) {
  RatPoly out(std::max(a.size(), b.size()), Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return trim(std::move(out));
}

RatPoly mul(const RatPoly& a, const RatPoly& b) {
  if (is_zero(a) || is_zero(b)) return {};
  RatPoly out(a.size() + b.size() - 1, Rat(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

RatPoly scale(const RatPoly& a, const Rat& s) {
  RatPoly out = a;
  for (Rat& c : out) c *= s;
  return trim(std::move(out));
}

RatPoly squarefree(const RatPoly& p) {
  RatPoly t = trim(p);
  if (degree(t) <= 0) return t;
  RatPoly g = poly_gcd(t, derivative(t));
  if (degree(g) <= 0) return t;
  return divide_exact(t, g);
}

namespace {

// Squarefree part with roots at a and b divided out, so Sturm counts on
// [a, b] give exactly the open-interval root count.
RatPoly deflate_endpoints(const RatPoly& p, const Rat& a, const Rat& b) {
  RatPoly sf = squarefree(p);
  while (degree(sf) > 0 && eval(sf, a) == 0) sf = divide_exact(sf, RatPoly{-a, Rat(1)});
  while (degree(sf) > 0 && eval(sf, b) == 0) sf = divide_exact(sf, RatPoly{-b, Rat(1)});
  return sf;
}

void isolate_rec(const std::vector<RatPoly>& chain, const RatPoly& sf, const Rat& a, const Rat& b,
                 int count, std::vector<std::pair<Rat, Rat>>& out) {
  if (count <= 0) return;
  if (count == 1) {
    out.emplace_back(a, b);
    return;
  }
  // Split at a non-root near the middle.
  Rat m = (a + b) / 2;
  Rat step = (b - a) / 65536;
  while (eval(sf, m) == 0) m += step;
  int va = sign_variations(chain, a), vm = sign_variations(chain, m), vb = sign_variations(chain, b);
  isolate_rec(chain, sf, a, m, va - vm, out);
  isolate_rec(chain, sf, m, b, vm - vb, out);
}

}  // namespace

int count_roots_open(const RatPoly& p, const Rat& a, const Rat& b) {
  if (!(a < b)) return 0;
  RatPoly sf = deflate_endpoints(p, a, b);
  if (degree(sf) <= 0) return 0;
  auto chain = sturm_chain(sf);
  return sign_variations(chain, a) - sign_variations(chain, b);
}

std::vector<double> isolate_roots(const RatPoly& p, const Rat& a, const Rat& b) {
  if (!(a < b)) return {};
  RatPoly sf = deflate_endpoints(p, a, b);
  if (degree(sf) <= 0) return {};
  auto chain = sturm_chain(sf);
  int total = sign_variations(chain, a) - sign_variations(chain, b);
  std::vector<std::pair<Rat, Rat>> brackets;
  isolate_rec(chain, sf, a, b, total, brackets);

  RatPoly d = derivative(sf);
  std::vector<double> roots;
  for (auto& [l, r] : brackets) {
    // Each bracket holds exactly one simple root, strictly inside (l, r].
    Rat lo = l, hi = r;
    int sl = sign_of(eval(sf, lo));
    int sh = sign_of(eval(sf, hi));
    if (sh == 0) {
      roots.push_back(to_double(hi));
      continue;
    }
    if (sl == sh) {  // should not happen for a simple bracketed root
      roots.push_back(0.5 * (to_double(lo) + to_double(hi)));
      continue;
    }
    for (int it = 0; it < 120 && to_double(hi - lo) > 1e-16 * (1 + std::abs(to_double(lo))); ++it) {
      Rat mid = (lo + hi) / 2;
      int sm = sign_of(eval(sf, mid));
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == sl)
        lo = mid;
      else
        hi = mid;
    }
    double x = 0.5 * (to_double(lo) + to_double(hi));
    double fx = eval(sf, x), dfx = eval(d, x);
    if (dfx != 0) {
      double nx = x - fx / dfx;
      if (nx > to_double(a) && nx < to_double(b)) x = nx;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace posys::polyroots
