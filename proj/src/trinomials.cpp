#include "posys/trinomials.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "posys/errors.hpp"
#include "posys/linalg.hpp"
#include "posys/polyroots.hpp"

namespace posys::trinomials {

using polyroots::RatPoly;
using signchar::SignCharParams;

double fqq(double q, double qp, double t) {
  return q / (1 + t * q) - qp / (1 + t * qp);
}

namespace {

// Extended value for one-sided limits.
struct ExtVal {
  double value = 0;
  int inf = 0;  // -1, 0, +1
  int sign() const { return inf != 0 ? inf : (value > 0) - (value < 0); }
};

ExtVal ext_add(ExtVal a, ExtVal b) {
  if (a.inf && b.inf) {
    if (a.inf != b.inf) throw std::logic_error("ext_add: indeterminate limit");
    return a;
  }
  if (a.inf) return a;
  if (b.inf) return b;
  return {a.value + b.value, 0};
}

ExtVal ext_scale(ExtVal a, double s) {
  if (s == 0) return {0, 0};
  if (a.inf) return {0, s > 0 ? a.inf : -a.inf};
  return {a.value * s, 0};
}

// Limit of s_{a,b}(l) P(l) as l -> 0+.
ExtVal sc_poly_limit0(double a, const RatPoly& p) {
  RatPoly t = polyroots::trim(p);
  if (t.empty()) return {0, 0};
  std::size_t k = 0;
  while (t[k] == 0) ++k;
  double e = a + static_cast<double>(k);
  double lead = to_double(t[k]);
  if (e > 0) return {0, 0};
  if (e == 0) return {lead, 0};
  return {0, lead > 0 ? 1 : -1};
}

// Limit of s_{a,b}(l) P(l) as l -> 1-.
ExtVal sc_poly_limit1(double b, const RatPoly& p) {
  RatPoly t = polyroots::trim(p);
  if (t.empty()) return {0, 0};
  // q(u) = P(1-u)
  RatPoly q = {Rat(0)};
  const RatPoly one_minus_u = {Rat(1), Rat(-1)};
  for (std::size_t i = t.size(); i-- > 0;) q = polyroots::add(polyroots::mul(q, one_minus_u), RatPoly{t[i]});
  q = polyroots::trim(q);
  if (q.empty()) return {0, 0};
  std::size_t k = 0;
  while (q[k] == 0) ++k;
  double e = b + static_cast<double>(k);
  double lead = to_double(q[k]);
  if (e > 0) return {0, 0};
  if (e == 0) return {lead, 0};
  return {0, lead > 0 ? 1 : -1};
}

ExtVal sc_limit0(double alpha) {
  if (alpha > 0) return {0, 0};
  if (alpha == 0) return {1, 0};
  return {0, 1};
}

struct PieceRoot {
  double t = 0;
  int multiplicity = 1;
};

// Zeros of F on (lo, hi) given the points where F' changes sign: between
// consecutive critical points F is strictly monotone, so each sign change
// yields exactly one root; near-zero values at critical points are tangency
// roots (multiplicity two, or three when the function crosses).
std::vector<PieceRoot> monotone_piece_roots(const std::function<double(double)>& f, double lo,
                                            double hi, ExtVal at_lo, ExtVal at_hi,
                                            std::vector<double> crit, double ztol) {
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  std::vector<double> pts;
  pts.push_back(lo);
  for (double c : crit)
    if (c > lo && c < hi) pts.push_back(c);
  pts.push_back(hi);

  const std::size_t n = pts.size();
  std::vector<int> sgn(n);
  std::vector<double> val(n, 0.0);
  sgn[0] = (at_lo.inf == 0 && std::abs(at_lo.value) <= ztol) ? 0 : at_lo.sign();
  sgn[n - 1] = (at_hi.inf == 0 && std::abs(at_hi.value) <= ztol) ? 0 : at_hi.sign();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    val[i] = f(pts[i]);
    sgn[i] = std::abs(val[i]) <= ztol ? 0 : (val[i] > 0 ? 1 : -1);
  }

  std::vector<PieceRoot> roots;
  // Tangency roots at interior critical points.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (sgn[i] != 0) continue;
    int left = 0, right = 0;
    for (std::size_t j = i; j-- > 0;)
      if (sgn[j] != 0) {
        left = sgn[j];
        break;
      }
    for (std::size_t j = i + 1; j < n; ++j)
      if (sgn[j] != 0) {
        right = sgn[j];
        break;
      }
    int mult = (left != 0 && right != 0 && left != right) ? 3 : 2;
    roots.push_back({pts[i], mult});
  }

  // Crossings inside pieces with strict opposite end signs.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (sgn[i] == 0 || sgn[i + 1] == 0 || sgn[i] == sgn[i + 1]) continue;
    double a = pts[i], b = pts[i + 1];
    // March inward to finite evaluation points carrying the end signs.
    double mid = 0.5 * (a + b);
    double aa = mid, bb = mid;
    int sm = (f(mid) > 0) ? 1 : (f(mid) < 0 ? -1 : 0);
    if (sm == sgn[i]) {
      for (int j = 0; j < 200; ++j) {
        double cand = b - (b - bb) * 0.5;
        int s = (f(cand) > 0) ? 1 : (f(cand) < 0 ? -1 : 0);
        bb = cand;
        if (s == sgn[i + 1]) break;
      }
    } else if (sm == sgn[i + 1]) {
      bb = mid;
      for (int j = 0; j < 200; ++j) {
        double cand = a + (aa - a) * 0.5;
        int s = (f(cand) > 0) ? 1 : (f(cand) < 0 ? -1 : 0);
        aa = cand;
        if (s == sgn[i]) break;
      }
    }
    double flo = f(aa), fhi = f(bb);
    if (flo == 0) {
      roots.push_back({aa, 1});
      continue;
    }
    if (fhi == 0) {
      roots.push_back({bb, 1});
      continue;
    }
    if ((flo > 0) == (fhi > 0)) {
      // Root hugging an endpoint beyond marching resolution.
      roots.push_back({(flo > 0) == (sgn[i] > 0) ? bb : aa, 1});
      continue;
    }
    for (int it = 0; it < 200 && bb - aa > 1e-16 * std::max(1.0, std::abs(aa)); ++it) {
      double c = 0.5 * (aa + bb);
      double fc = f(c);
      if (fc == 0) {
        aa = bb = c;
        break;
      }
      if ((fc > 0) == (flo > 0)) {
        aa = c;
        flo = fc;
      } else {
        bb = c;
      }
    }
    roots.push_back({0.5 * (aa + bb), 1});
  }
  std::sort(roots.begin(), roots.end(), [](const PieceRoot& x, const PieceRoot& y) { return x.t < y.t; });
  return roots;
}

}  // namespace

int sign_variations(const std::vector<Rat>& seq) {
  int count = 0, last = 0;
  for (const Rat& x : seq) {
    int s = sign_of(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

SegmentProblem make_segment_problem(const framework::ProblemInstance& p) {
  const std::size_t m = p.num_monomials();
  SegmentProblem sp;

  // Fold the parameters into the coefficient matrix: A(c ∘ x^B) = Ã x^B.
  RatMatrix folded = p.coeff;
  for (std::size_t i = 0; i < folded.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) folded(i, j) *= p.params[j];
  sp.nf = geometry::segment_normal_form(folded);

  // Dependency generator in sorted column order.
  if (p.exact_exponents) {
    RatMatrix sorted = p.expo_rat.select_cols(sp.nf.perm);
    RatMatrix ones(1, m, Rat(1));
    auto dep = linalg::kernel_basis(RatMatrix::vstack(sorted, ones));
    if (dep.size() != 1)
      throw std::invalid_argument("make_segment_problem: dependency dimension is not one");
    sp.depgen = dep.front();
  } else {
    RealMatrix sorted = p.expo.select_cols(sp.nf.perm);
    RealMatrix ones(1, m, 1.0);
    RealMatrix stacked = RealMatrix::vstack(sorted, ones);
    stacked.tol = p.tols.rank;
    auto dep = linalg::kernel_basis(stacked);
    if (dep.size() != 1)
      throw std::invalid_argument("make_segment_problem: dependency dimension is not one");
    sp.depgen = to_rationals(dep.front());
    normalize_primitive(sp.depgen);
  }

  Rat run = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    run += sp.depgen[i];
    sp.partial_sums.push_back(run);
  }

  // Runs of equal q.
  std::size_t start = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    if (i == m || sp.nf.q[i] != sp.nf.q[start]) {
      std::vector<std::size_t> cls;
      for (std::size_t j = start; j < i; ++j) cls.push_back(j);
      sp.q_classes.push_back(std::move(cls));
      start = i;
    }
  }
  for (const auto& cls : sp.q_classes) {
    Rat sum = 0;
    for (std::size_t j : cls) sum += sp.depgen[j];
    sp.collapsed.push_back(sum);
  }
  run = 0;
  for (std::size_t i = 0; i + 1 < sp.collapsed.size(); ++i) {
    run += sp.collapsed[i];
    sp.collapsed_partial.push_back(run);
  }

  sp.log_target = 0;
  for (std::size_t i = 0; i < m; ++i)
    sp.log_target -= to_double(sp.depgen[i]) * std::log(to_double(sp.nf.scale[i]));

  // Standard-form instance: Ã x^B = 𝒜 (c_nf^{-1} ∘ x^B) with 𝒜 = Ã diag(c_nf).
  RatMatrix folded_sorted = folded.select_cols(sp.nf.perm);
  RatMatrix norm = linalg::row_space_basis(folded_sorted);
  for (std::size_t i = 0; i < norm.rows(); ++i)
    for (std::size_t j = 0; j < m; ++j) norm(i, j) *= sp.nf.scale[j];
  RatVec new_params(m);
  for (std::size_t j = 0; j < m; ++j) new_params[j] = 1 / sp.nf.scale[j];
  if (p.exact_exponents) {
    sp.rewritten = framework::make_instance(norm, p.expo_rat.select_cols(sp.nf.perm), new_params,
                                            geometry::ClassPartition::single(m), p.tols);
  } else {
    sp.rewritten = framework::make_instance(norm, p.expo.select_cols(sp.nf.perm), new_params,
                                            geometry::ClassPartition::single(m), p.tols);
  }
  sp.aux = framework::build_aux(sp.rewritten);
  return sp;
}

int segment_rule_of_signs(const SegmentProblem& sp) {
  return 1 + sign_variations(sp.collapsed_partial);
}

std::vector<SegmentRoot> segment_solve(const SegmentProblem& sp) {
  const std::size_t k = sp.q_classes.size();
  RatVec qvals(k);
  for (std::size_t i = 0; i < k; ++i) qvals[i] = sp.nf.q[sp.q_classes[i].front()];

  // Numerator of g(t) = sum b~_i q~_i / (1 + t q~_i): critical points of f.
  RatPoly numer;
  for (std::size_t i = 0; i < k; ++i) {
    RatPoly term = {sp.collapsed[i] * qvals[i]};
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      term = polyroots::mul(term, RatPoly{Rat(1), qvals[j]});
    }
    numer = polyroots::add(numer, term);
  }

  if (polyroots::is_zero(numer)) {
    // f is constant, equal to 1 (its value at t = 0).
    if (std::abs(sp.log_target) <= 1e-9)
      throw InfiniteSolutions("segment_solve: condition holds identically");
    return {};
  }

  // Roots hug t = +-1 when the target is extreme, so refinement runs in the
  // coordinate v = artanh(t), which keeps full relative precision in 1 -+ t.
  std::vector<double> qd(k), bd(k);
  for (std::size_t i = 0; i < k; ++i) {
    qd[i] = to_double(qvals[i]);
    bd[i] = to_double(sp.collapsed[i]);
  }
  auto log1p_q_tanh = [](double q, double v) {
    if (q == 1) return std::log(2.0) - std::log1p(std::exp(-2 * v));
    if (q == -1) return std::log(2.0) - std::log1p(std::exp(2 * v));
    return std::log1p(q * std::tanh(v));
  };
  auto h = [&](double v) {
    double s = -sp.log_target;
    for (std::size_t i = 0; i < k; ++i) s += bd[i] * log1p_q_tanh(qd[i], v);
    return s;
  };

  // Limits of h at t -> -1+ and t -> 1-: governed by the q = +1 and q = -1
  // class weights.
  auto boundary = [&](bool left) {
    const Rat& w = left ? sp.collapsed.front() : sp.collapsed.back();
    if (w > 0) return ExtVal{0, -1};
    if (w < 0) return ExtVal{0, 1};
    double s = -sp.log_target;
    for (std::size_t i = 0; i < k; ++i) {
      if (left && i == 0) continue;
      if (!left && i + 1 == k) continue;
      s += bd[i] * std::log1p(left ? -qd[i] : qd[i]);
    }
    return ExtVal{s, 0};
  };

  // Scan span per side: past it the boundary term 2 |b~| |v| provably
  // dominates the target and all interior contributions.
  double interior = std::abs(sp.log_target);
  for (std::size_t i = 0; i < k; ++i) {
    double cap = std::abs(qd[i]) < 1 ? std::max(-std::log1p(-std::abs(qd[i])),
                                                std::log1p(std::abs(qd[i])))
                                     : std::log(2.0);
    interior += std::abs(bd[i]) * cap;
  }
  auto side_span = [&](const Rat& w) {
    if (w == 0) return 25.0;
    return std::min(500.0, (interior + 10) / (2 * std::abs(to_double(w))) + 10);
  };
  const double v_left = side_span(sp.collapsed.front());
  const double v_right = side_span(sp.collapsed.back());

  std::vector<double> crit_v;
  for (double t : polyroots::isolate_roots(numer, Rat(-1), Rat(1)))
    crit_v.push_back(std::atanh(t));
  auto piece_roots =
      monotone_piece_roots(h, -v_left, v_right, boundary(true), boundary(false), crit_v, 1e-9);

  std::vector<SegmentRoot> out;
  for (const auto& r : piece_roots) {
    SegmentRoot sr;
    sr.t = std::tanh(r.t);
    sr.multiplicity = r.multiplicity;
    RealVec y(sp.nf.q.size());
    for (std::size_t j = 0; j < y.size(); ++j)
      y[j] = std::exp(log1p_q_tanh(to_double(sp.nf.q[j]), r.t));
    sr.x = framework::lift_solution(y, sp.aux, sp.rewritten.params, 1e-6);
    out.push_back(std::move(sr));
  }
  return out;
}

std::vector<CurveComponent> curve_parametrize_d1(double b1, double b2, double b3, double cstar,
                                                 std::size_t samples_per_component) {
  using signchar::RootBranch;
  if (!(cstar > 0)) throw DomainError("curve_parametrize_d1: cstar must be positive");
  if (b1 == 0 && b2 == 0)
    throw DomainError("curve_parametrize_d1: first exponent pair must be nonzero");
  const SignCharParams s1{b1, b2}, s2{-b3, 1};
  const std::size_t n = std::max<std::size_t>(samples_per_component, 8);
  auto grid = [&](std::size_t i) { return (static_cast<double>(i) + 1) / (static_cast<double>(n) + 1); };

  std::vector<CurveComponent> comps;
  if (b3 >= 0) {
    // The right side is monotone: one component as a graph over lambda_1.
    CurveComponent c;
    for (std::size_t i = 0; i < n; ++i) {
      double l1 = grid(i);
      double target = std::log(signchar::sc_eval(s1, l1)) - std::log(cstar);
      c.samples.push_back({l1, signchar::sc_root_log(s2, target, RootBranch::Whole)});
    }
    comps.push_back(std::move(c));
    return comps;
  }

  // b3 < 0: the right side has a maximum.
  const double s2max = signchar::sc_extremum(s2).value;
  if (b1 * b2 < 0 || b1 == 0 || b2 == 0) {
    // Left side monotone: one component as a graph over lambda_2.
    CurveComponent c;
    for (std::size_t i = 0; i < n; ++i) {
      double l2 = grid(i);
      double target = std::log(cstar) + std::log(signchar::sc_eval(s2, l2));
      c.samples.push_back({signchar::sc_root_log(s1, target, RootBranch::Whole), l2});
    }
    comps.push_back(std::move(c));
    return comps;
  }

  if (b1 > 0 && b2 > 0) {
    // Both sides peak: two components, parametrized over the lower peak.
    const double s1max = signchar::sc_extremum(s1).value;
    const double lim = cstar * s2max;
    for (RootBranch branch : {RootBranch::Minus, RootBranch::Plus}) {
      CurveComponent c;
      for (std::size_t i = 0; i < n; ++i) {
        double l = grid(i);
        if (s1max <= lim) {
          double target = std::log(signchar::sc_eval(s1, l)) - std::log(cstar);
          c.samples.push_back({l, signchar::sc_root_log(s2, target, branch)});
        } else {
          double target = std::log(cstar) + std::log(signchar::sc_eval(s2, l));
          c.samples.push_back({signchar::sc_root_log(s1, target, branch), l});
        }
      }
      comps.push_back(std::move(c));
    }
    return comps;
  }

  // b1, b2 < 0: the left side is a well; solutions iff cstar >= s1min / s2max.
  const double s1min = signchar::sc_extremum(s1).value;
  const double top = cstar * s2max;
  if (top < s1min * (1 - 1e-12))
    throw NoSolutions("curve_parametrize_d1: cstar below the existence threshold");
  const double l1star = signchar::sc_extremum(s1).location;
  const double l2star = signchar::sc_extremum(s2).location;
  CurveComponent c;
  if (top <= s1min * (1 + 1e-12)) {
    c.samples.push_back({l1star, l2star});  // tangency point
    comps.push_back(std::move(c));
    return comps;
  }
  const std::size_t quarter = std::max<std::size_t>(n / 4, 4);
  auto vgrid = [&](std::size_t i) {
    return s1min + (top - s1min) * static_cast<double>(i) / static_cast<double>(quarter);
  };
  auto arc = [&](RootBranch br1, RootBranch br2, bool ascending) {
    for (std::size_t i = 0; i <= quarter; ++i) {
      double v = vgrid(ascending ? i : quarter - i);
      double log_v = std::log(v);
      double la = signchar::sc_root_log(s1, log_v, br1);
      double lb = signchar::sc_root_log(s2, log_v - std::log(cstar), br2);
      c.samples.push_back({la, lb});
    }
  };
  // Closed loop through the four branch combinations.
  arc(RootBranch::Minus, RootBranch::Minus, true);
  arc(RootBranch::Minus, RootBranch::Plus, false);
  arc(RootBranch::Plus, RootBranch::Plus, true);
  arc(RootBranch::Plus, RootBranch::Minus, false);
  comps.push_back(std::move(c));
  return comps;
}

namespace {

struct TrinomialClass {
  Rat coef1, coef2;                // positive coefficients after normalization
  std::array<RatVec, 2> relative;  // exponent differences to the negative monomial
};

TrinomialClass analyze_class(const framework::ProblemInstance& p,
                             const std::vector<std::size_t>& cls, const RatMatrix& expo_rat) {
  if (cls.size() != 3)
    throw std::invalid_argument("two_trinomial_standardize: classes must hold three monomials");
  RatMatrix row = linalg::row_space_basis(p.coeff.select_cols(cls));
  if (row.rows() != 1)
    throw std::invalid_argument("two_trinomial_standardize: class equation is not one-dimensional");
  int neg = 0, pos = 0;
  for (std::size_t j = 0; j < 3; ++j) {
    if (row(0, j) > 0) ++pos;
    if (row(0, j) < 0) ++neg;
  }
  if (pos + neg != 3 || (neg != 1 && pos != 1))
    throw std::invalid_argument("two_trinomial_standardize: class is not a signed trinomial");
  if (pos == 1)
    for (std::size_t j = 0; j < 3; ++j) row(0, j) = -row(0, j);
  std::size_t negidx = 0;
  std::vector<std::size_t> posidx;
  for (std::size_t j = 0; j < 3; ++j) {
    if (row(0, j) < 0)
      negidx = j;
    else
      posidx.push_back(j);
  }
  TrinomialClass out;
  Rat denom = -row(0, negidx) * p.params[cls[negidx]];
  out.coef1 = row(0, posidx[0]) * p.params[cls[posidx[0]]] / denom;
  out.coef2 = row(0, posidx[1]) * p.params[cls[posidx[1]]] / denom;
  for (int i = 0; i < 2; ++i) {
    RatVec rel(2);
    for (std::size_t v = 0; v < 2; ++v)
      rel[v] = expo_rat(v, cls[posidx[i]]) - expo_rat(v, cls[negidx]);
    out.relative[i] = rel;
  }
  return out;
}

}  // namespace

TwoTrinomialProblem two_trinomial_standardize(const framework::ProblemInstance& p) {
  if (p.num_variables() != 2)
    throw std::invalid_argument("two_trinomial_standardize: two variables required");
  if (p.num_classes() != 2)
    throw std::invalid_argument("two_trinomial_standardize: two classes required");
  RatMatrix expo_rat = p.exact_exponents ? p.expo_rat : to_rational(p.expo);

  TrinomialClass solver = analyze_class(p, p.partition.classes[0], expo_rat);
  TrinomialClass other = analyze_class(p, p.partition.classes[1], expo_rat);

  RatMatrix r(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t v = 0; v < 2; ++v) r(i, v) = solver.relative[i][v];
  Rat det = r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0);
  if (det == 0) {
    // The solved trinomial lives on a monomial curve u = x^{r1}.
    const RatVec& dir = solver.relative[0];
    if (dir[0] == 0 && dir[1] == 0)
      throw DegenerateExponents("two_trinomial_standardize: first class has a constant monomial");
    Rat kappa = linalg::dot(solver.relative[1], dir) / linalg::dot(dir, dir);
    UnivariateReduction red;
    red.b1 = 1;
    red.b2 = to_double(kappa);
    red.c1 = to_double(solver.coef1);
    red.c2 = to_double(solver.coef2);
    red.direction = to_doubles(dir);
    throw DegenerateToUnivariate(std::move(red));
  }

  RatMatrix rinv = linalg::inverse(r);
  TwoTrinomialProblem tp;
  tp.exact = true;
  RatMatrix rinv_t = rinv.transposed();
  for (int i = 0; i < 2; ++i) {
    RatVec ab = rinv_t * other.relative[i];
    tp.exact_expo[2 * i] = ab[0];
    tp.exact_expo[2 * i + 1] = ab[1];
  }
  tp.first = {to_double(tp.exact_expo[0]), to_double(tp.exact_expo[1])};
  tp.second = {to_double(tp.exact_expo[2]), to_double(tp.exact_expo[3])};
  if ((tp.exact_expo[0] == 0 && tp.exact_expo[1] == 0) ||
      (tp.exact_expo[2] == 0 && tp.exact_expo[3] == 0) ||
      (tp.exact_expo[0] == tp.exact_expo[2] && tp.exact_expo[1] == tp.exact_expo[3]))
    throw DegenerateExponents("two_trinomial_standardize: exponent pairs must be distinct and nonzero");

  tp.cbar = {to_double(solver.coef1), to_double(solver.coef2)};
  double log_c1 = std::log(tp.cbar[0]), log_c2 = std::log(tp.cbar[1]);
  tp.gamma1 = std::exp(std::log(to_double(other.coef1)) - tp.first.alpha * log_c1 -
                       tp.first.beta * log_c2);
  tp.gamma2 = std::exp(std::log(to_double(other.coef2)) - tp.second.alpha * log_c1 -
                       tp.second.beta * log_c2);
  tp.back_subst = to_real(rinv);
  return tp;
}

std::vector<TwoTrinomialRoot> two_trinomial_solve(const TwoTrinomialProblem& tp) {
  const double a1 = tp.first.alpha, be1 = tp.first.beta;
  const double a2 = tp.second.alpha, be2 = tp.second.beta;
  const double g1 = tp.gamma1, g2 = tp.gamma2;

  auto f = [&](double l) {
    return g1 * signchar::sc_eval(tp.first, l) + g2 * signchar::sc_eval(tp.second, l) - 1;
  };

  {  // Identically-zero detection.
    bool all_zero = true;
    for (int i = 1; i <= 7 && all_zero; ++i)
      all_zero = std::abs(f(i / 8.0)) <= 1e-12 * (1 + g1 + g2);
    if (all_zero) throw InfiniteSolutions("two_trinomial_solve: the equation holds identically");
  }

  // Exact chain polynomials. g ~ f' after dividing by s_{a2-1,b2-1} > 0:
  //   g  = g1 s_{a,b} L1 + g2 L2
  //   g' = g1 s_{a-1,b-1} q2 - g2 (a2 + b2)
  //   g''= g1 s_{a-2,b-2} q3
  const Rat ra1 = tp.exact ? tp.exact_expo[0] : rat_from_double(a1);
  const Rat rb1 = tp.exact ? tp.exact_expo[1] : rat_from_double(be1);
  const Rat ra2 = tp.exact ? tp.exact_expo[2] : rat_from_double(a2);
  const Rat rb2 = tp.exact ? tp.exact_expo[3] : rat_from_double(be2);
  const Rat ra = ra1 - ra2, rb = rb1 - rb2;
  const RatPoly el1 = {ra1, -ra1 - rb1};
  const RatPoly el2 = {ra2, -ra2 - rb2};
  const RatPoly lam_one_minus = {Rat(0), Rat(1), Rat(-1)};
  const RatPoly q2 = polyroots::add(
      polyroots::mul(RatPoly{ra, -ra - rb}, el1),
      polyroots::scale(lam_one_minus, -(ra1 + rb1)));
  const RatPoly q3 = polyroots::add(
      polyroots::mul(RatPoly{ra - 1, -(ra - 1) - (rb - 1)}, q2),
      polyroots::mul(lam_one_minus, polyroots::derivative(q2)));

  const double da = to_double(ra), db = to_double(rb);
  auto g = [&](double l) {
    return g1 * std::exp(da * std::log(l) + db * std::log1p(-l)) * polyroots::eval(el1, l) +
           g2 * polyroots::eval(el2, l);
  };
  auto gp = [&](double l) {
    return g1 * std::exp((da - 1) * std::log(l) + (db - 1) * std::log1p(-l)) *
               polyroots::eval(q2, l) -
           g2 * (a2 + be2);
  };

  const double scale = 1 + g1 + g2;
  const double ztol = 1e-12 * scale;

  // Level g'': exact roots of q3.
  auto crit_gp = polyroots::isolate_roots(q3, Rat(0), Rat(1));

  // Level g': limits from s * q2 minus the constant.
  ExtVal gp0 = ext_add(ext_scale(sc_poly_limit0(da - 1, q2), g1), {-g2 * (a2 + be2), 0});
  ExtVal gp1 = ext_add(ext_scale(sc_poly_limit1(db - 1, q2), g1), {-g2 * (a2 + be2), 0});
  auto roots_gp = monotone_piece_roots(gp, 0, 1, gp0, gp1, crit_gp, ztol);

  std::vector<double> crit_g;
  for (const auto& r : roots_gp) crit_g.push_back(r.t);
  ExtVal g0 = ext_add(ext_scale(sc_poly_limit0(da, el1), g1), {g2 * to_double(el2.front()), 0});
  ExtVal g1v = ext_add(ext_scale(sc_poly_limit1(db, el1), g1),
                       {g2 * polyroots::eval(el2, 1.0), 0});
  auto roots_g = monotone_piece_roots(g, 0, 1, g0, g1v, crit_g, ztol);

  std::vector<double> crit_f;
  for (const auto& r : roots_g) crit_f.push_back(r.t);
  ExtVal f0 = ext_add(ext_add(ext_scale(sc_limit0(a1), g1), ext_scale(sc_limit0(a2), g2)), {-1, 0});
  ExtVal f1 = ext_add(ext_add(ext_scale(sc_limit0(be1), g1), ext_scale(sc_limit0(be2), g2)),
                      {-1, 0});
  auto roots_f = monotone_piece_roots(f, 0, 1, f0, f1, crit_f, 1e-11 * scale);

  // Merge near-coincident roots as double roots.
  std::vector<PieceRoot> merged;
  for (const auto& r : roots_f) {
    if (!merged.empty() && r.t - merged.back().t < 1e-10) {
      merged.back().multiplicity = 2;
      merged.back().t = 0.5 * (merged.back().t + r.t);
    } else {
      merged.push_back(r);
    }
  }

  std::vector<TwoTrinomialRoot> out;
  for (const auto& r : merged) {
    TwoTrinomialRoot root;
    root.lambda = r.t;
    root.multiplicity = r.multiplicity;
    double lw1 = std::log(r.t) - std::log(tp.cbar[0]);
    double lw2 = std::log1p(-r.t) - std::log(tp.cbar[1]);
    for (int i = 0; i < 2; ++i)
      root.x[i] = std::exp(tp.back_subst(i, 0) * lw1 + tp.back_subst(i, 1) * lw2);
    out.push_back(root);
  }
  return out;
}

int two_trinomial_bound(const TwoTrinomialProblem& tp) {
  const Rat& a1 = tp.exact ? tp.exact_expo[0] : rat_from_double(tp.first.alpha);
  const Rat& b1 = tp.exact ? tp.exact_expo[1] : rat_from_double(tp.first.beta);
  const Rat& a2 = tp.exact ? tp.exact_expo[2] : rat_from_double(tp.second.alpha);
  const Rat& b2 = tp.exact ? tp.exact_expo[3] : rat_from_double(tp.second.beta);

  auto w3_count = [&]() {
    auto w = signchar::wronskian_signchar_exact({{Rat(0), Rat(0)}, {a1, b1}, {a2, b2}});
    return signchar::wronskian_zero_count(w);
  };

  const bool zero_present = a1 == 0 || b1 == 0 || a2 == 0 || b2 == 0;
  const bool mixed1 = sign_of(a1) * sign_of(b1) < 0;
  const bool mixed2 = sign_of(a2) * sign_of(b2) < 0;

  if (zero_present || (mixed1 && mixed2)) return std::min(2 + w3_count(), 4);
  if (mixed1 != mixed2) return std::min(2 + w3_count(), 5);
  // Both pairs strictly one-signed.
  const bool pos1 = a1 > 0, pos2 = a2 > 0;
  if (pos1 == pos2) {
    int z = w3_count();
    return z >= 2 ? 4 : 2;
  }
  return 4;
}

long long tnomial_bound(long long t) {
  if (t < 3) throw std::invalid_argument("tnomial_bound: t must be at least 3");
  return (t * t * t - 3 * t * t + 8 * t - 6) / 3;
}

TnomialTableRow tnomial_comparison_row(long long t) {
  TnomialTableRow row;
  row.t = t;
  row.this_work = Rat(tnomial_bound(t));
  row.li2003 = Rat(boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(t)) - 2);
  row.koiran2015 = Rat(2 * t * t * t + 15 * t, 3);
  return row;
}

}  // namespace posys::trinomials
