#include "posys/signchar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "posys/errors.hpp"

namespace posys::signchar {

namespace {

double log_sc(const SignCharParams& p, double lambda) {
  return p.alpha * std::log(lambda) + p.beta * std::log1p(-lambda);
}

bool integral(double x) { return std::isfinite(x) && x == std::rint(x) && std::abs(x) < 1e15; }

// Root finding runs in the logit coordinate u = ln(l / (1 - l)), which keeps
// full relative precision for roots hugging either end of (0, 1).
constexpr double kLogitMax = 710.0;

double logit_log_lambda(double u) {
  return u <= 0 ? u - std::log1p(std::exp(u)) : -std::log1p(std::exp(-u));
}

double logit_log_one_minus(double u) {
  return u <= 0 ? -std::log1p(std::exp(u)) : -u - std::log1p(std::exp(-u));
}

struct LogitRoot {
  double u = 0;
  double log_lambda = 0;
  double log_one_minus = 0;
};

// h(u) = alpha ln l(u) + beta ln(1 - l(u)) - log_y, strictly monotone on the
// bracketed piece. dh/du = alpha (1 - l) - beta l.
LogitRoot bisect_logit(const SignCharParams& p, double log_y, double ulo, double uhi) {
  auto h = [&](double u) {
    return p.alpha * logit_log_lambda(u) + p.beta * logit_log_one_minus(u) - log_y;
  };
  double hlo = h(ulo), hhi = h(uhi);
  if (hlo == 0) uhi = ulo;
  if (hhi == 0) ulo = uhi;
  if (hlo * hhi > 0 && ulo != uhi)
    throw OutOfRange("sc_root: root lies outside the representable range of (0,1)");
  for (int it = 0; it < 300 && uhi - ulo > 1e-14 * (1 + std::abs(ulo)); ++it) {
    double mid = 0.5 * (ulo + uhi);
    double hm = h(mid);
    if (hm == 0) {
      ulo = uhi = mid;
      break;
    }
    if ((hm > 0) == (hlo > 0)) {
      ulo = mid;
      hlo = hm;
    } else {
      uhi = mid;
    }
  }
  double u = 0.5 * (ulo + uhi);
  double lam = std::exp(logit_log_lambda(u));
  double d = p.alpha * (1 - lam) - p.beta * lam;
  if (d != 0) {
    double nu = u - h(u) / d;
    if (std::isfinite(nu) && nu >= ulo - (uhi - ulo) - 1 && nu <= uhi + (uhi - ulo) + 1) u = nu;
  }
  return {u, logit_log_lambda(u), logit_log_one_minus(u)};
}

// Doubles the step away from u0 until h changes sign; returns the far end.
double march_for_sign(const SignCharParams& p, double log_y, double u0, double direction,
                      int wanted_sign) {
  auto h = [&](double u) {
    return p.alpha * logit_log_lambda(u) + p.beta * logit_log_one_minus(u) - log_y;
  };
  double step = 1;
  double u = u0 + direction * step;
  for (int it = 0; it < 60; ++it) {
    if (std::abs(u) > kLogitMax) {
      u = direction > 0 ? kLogitMax : -kLogitMax;
      break;
    }
    double v = h(u);
    if ((v > 0 && wanted_sign > 0) || (v < 0 && wanted_sign < 0) || v == 0) return u;
    step *= 2;
    u = u0 + direction * step;
  }
  return u;
}

LogitRoot sc_root_logit(const SignCharParams& p, double log_y, RootBranch branch) {
  const double a = p.alpha, b = p.beta;
  if (branch == RootBranch::Whole) {
    bool monotone = (a * b < 0) || (a == 0) != (b == 0);
    if (!monotone) throw DomainError("sc_root: whole branch needs a monotone function");
    bool increasing = a > 0 || (a == 0 && b < 0);
    // Left end must carry sign opposite to the growth direction.
    double ulo = march_for_sign(p, log_y, 0, -1, increasing ? -1 : 1);
    double uhi = march_for_sign(p, log_y, 0, 1, increasing ? 1 : -1);
    return bisect_logit(p, log_y, ulo, uhi);
  }

  if (a * b <= 0) throw DomainError("sc_root: branch roots need an extremum");
  Extremum ext = sc_extremum(p);
  double log_ext = std::log(ext.value);
  const double tol = 1e-12 * std::max(1.0, std::abs(log_ext));
  if (ext.kind == ExtremumKind::Max && log_y > log_ext + tol)
    throw OutOfRange("sc_root: target above the maximum");
  if (ext.kind == ExtremumKind::Min && log_y < log_ext - tol)
    throw OutOfRange("sc_root: target below the minimum");
  double ustar = std::log(a / b);  // logit of the extremum location
  if (std::abs(log_y - log_ext) <= tol)
    return {ustar, logit_log_lambda(ustar), logit_log_one_minus(ustar)};

  int far_sign = (ext.kind == ExtremumKind::Max) ? -1 : 1;
  if (branch == RootBranch::Minus) {
    double ulo = march_for_sign(p, log_y, ustar, -1, far_sign);
    return bisect_logit(p, log_y, ulo, ustar);
  }
  double uhi = march_for_sign(p, log_y, ustar, 1, far_sign);
  return bisect_logit(p, log_y, ustar, uhi);
}

}  // namespace

double sc_eval(const SignCharParams& p, double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw DomainError("sc_eval: lambda outside (0,1)");
  return std::exp(log_sc(p, lambda));
}

double sc_deriv(const SignCharParams& p, double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw DomainError("sc_deriv: lambda outside (0,1)");
  SignCharParams shifted{p.alpha - 1, p.beta - 1};
  return std::exp(log_sc(shifted, lambda)) * (p.alpha * (1 - lambda) - p.beta * lambda);
}

Extremum sc_extremum(const SignCharParams& p) {
  Extremum e;
  if (!(p.alpha * p.beta > 0)) return e;  // monotone or constant: no extremum
  e.kind = p.alpha > 0 ? ExtremumKind::Max : ExtremumKind::Min;
  e.location = p.alpha / (p.alpha + p.beta);
  e.value = std::exp(log_sc(p, e.location));
  if (integral(p.alpha) && integral(p.beta)) {
    long a = static_cast<long>(p.alpha), b = static_cast<long>(p.beta);
    Rat lam = Rat(a) / Rat(a + b);
    e.exact_value = pow_rat(lam, a) * pow_rat(1 - lam, b);
  }
  return e;
}

double sc_root_log(const SignCharParams& p, double log_y, RootBranch branch) {
  return std::exp(sc_root_logit(p, log_y, branch).log_lambda);
}

double sc_root(const SignCharParams& p, double y, RootBranch branch) {
  if (!(y > 0)) throw DomainError("sc_root: target must be positive");
  return sc_root_log(p, std::log(y), branch);
}

double trinomial_discriminant(double b1, double b2, double c1, double c2) {
  double b = b1 / b2;
  if (b >= 0) throw DomainError("trinomial_discriminant: defined for b1*b2 < 0");
  double ab = -b;  // |b|
  SignCharParams p{1, ab};
  Extremum ext = sc_extremum(p);
  return ext.value - c1 * std::pow(c2, ab);
}

std::vector<TrinomialRoot> trinomial_solve(double b1, double b2, double c1, double c2) {
  if (b1 == 0 || b2 == 0 || b1 == b2)
    throw DegenerateExponents("trinomial_solve: exponents must be nonzero and distinct");
  if (!(c1 > 0 && c2 > 0)) throw DomainError("trinomial_solve: coefficients must be positive");

  const double b = b1 / b2;
  // Condition on the polytope: s_{1,-b}(l) = c1 c2^{-b}, then x = (l/c1)^{1/b1}.
  const double log_target = std::log(c1) - b * std::log(c2);
  auto lift = [&](const LogitRoot& r) { return std::exp((r.log_lambda - std::log(c1)) / b1); };

  std::vector<TrinomialRoot> roots;
  if (b > 0) {
    roots.push_back({lift(sc_root_logit(SignCharParams{1, -b}, log_target, RootBranch::Whole)), 1});
    return roots;
  }

  SignCharParams p{1, -b};  // -b = |b| > 0: a maximum
  Extremum ext = sc_extremum(p);
  double disc = ext.value - std::exp(log_target);
  if (std::abs(disc) <= 1e-12 * ext.value) {
    roots.push_back({std::exp((std::log(ext.location) - std::log(c1)) / b1), 2});
    return roots;
  }
  if (disc < 0) return roots;  // no positive solutions
  roots.push_back({lift(sc_root_logit(p, log_target, RootBranch::Minus)), 1});
  roots.push_back({lift(sc_root_logit(p, log_target, RootBranch::Plus)), 1});
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& c) { return a.x < c.x; });
  return roots;
}

namespace {

using polyroots::RatPoly;

// s^{(j)}_{a,b} = s_{a-j,b-j} * Q_j with Q_0 = 1 and
// Q_{j+1} = ((a-j)(1-l) - (b-j) l) Q_j + l(1-l) Q_j'.
std::vector<RatPoly> derivative_factors(const Rat& a, const Rat& b, std::size_t count) {
  std::vector<RatPoly> q;
  q.push_back({Rat(1)});
  const RatPoly l_one_minus_l = {Rat(0), Rat(1), Rat(-1)};
  for (std::size_t j = 0; j + 1 < count; ++j) {
    Rat aj = a - Rat(static_cast<long>(j)), bj = b - Rat(static_cast<long>(j));
    RatPoly linear = {aj, -aj - bj};
    q.push_back(polyroots::add(polyroots::mul(linear, q[j]),
                               polyroots::mul(l_one_minus_l, polyroots::derivative(q[j]))));
  }
  return q;
}

RatPoly det_poly(const std::vector<std::vector<RatPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2)
    return polyroots::add(polyroots::mul(m[0][0], m[1][1]),
                          polyroots::scale(polyroots::mul(m[0][1], m[1][0]), Rat(-1)));
  RatPoly out;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::vector<RatPoly>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<RatPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    RatPoly term = polyroots::mul(m[0][j], det_poly(minor));
    if (j % 2) term = polyroots::scale(term, Rat(-1));
    out = polyroots::add(out, term);
  }
  return out;
}

}  // namespace

WronskianForm wronskian_signchar_exact(const std::vector<std::pair<Rat, Rat>>& params) {
  const std::size_t k = params.size();
  if (k == 0 || k > 3)
    throw Unsupported("wronskian_signchar: supported for one to three functions");

  WronskianForm w;
  w.order = k * (k - 1) / 2;
  Rat asum = 0, bsum = 0;
  for (const auto& [a, b] : params) {
    asum += a;
    bsum += b;
  }
  w.alpha_shift = to_double(asum) - static_cast<double>(w.order);
  w.beta_shift = to_double(bsum) - static_cast<double>(w.order);

  // Columns: derivative factors Q_j of each function; the Wronskian is
  // s_{shift} times det[Q_j^{(i)}].
  std::vector<std::vector<RatPoly>> matrix(k, std::vector<RatPoly>(k));
  for (std::size_t i = 0; i < k; ++i) {
    auto q = derivative_factors(params[i].first, params[i].second, k);
    for (std::size_t j = 0; j < k; ++j) matrix[j][i] = q[j];
  }
  w.poly = polyroots::trim(det_poly(matrix));
  if (polyroots::degree(w.poly) > static_cast<int>(w.order))
    throw std::logic_error("wronskian_signchar: factor polynomial degree exceeds C(n,2)");
  return w;
}

WronskianForm wronskian_signchar(const std::vector<SignCharParams>& params) {
  std::vector<std::pair<Rat, Rat>> exact;
  exact.reserve(params.size());
  for (const auto& p : params)
    exact.emplace_back(rat_from_double(p.alpha), rat_from_double(p.beta));
  return wronskian_signchar_exact(exact);
}

int wronskian_zero_count(const WronskianForm& w) {
  if (polyroots::is_zero(w.poly))
    throw Unsupported("wronskian_zero_count: Wronskian vanishes identically");
  return polyroots::count_roots_open(w.poly, Rat(0), Rat(1));
}

int rolle_refined_bound(int zeros_of_derivative, const EndpointData& ends) {
  const int z = zeros_of_derivative;
  int best = z + 1;
  if (ends.f_left && ends.f_right && *ends.f_left != 0 && *ends.f_right != 0) {
    const int prod = *ends.f_left * *ends.f_right;
    const bool even = z % 2 == 0;
    if ((even && prod > 0) || (!even && prod < 0)) best = std::min(best, z);
    if (ends.f_fprime_left && *ends.f_fprime_left > 0) {
      if ((even && prod < 0) || (!even && prod > 0)) best = std::min(best, z - 1);
    }
  }
  return std::max(best, 0);
}

long long koiran_bound(const std::vector<long long>& wronskian_zero_counts) {
  const std::size_t n = wronskian_zero_counts.size();
  if (n == 0) throw std::invalid_argument("koiran_bound: at least one Wronskian count required");
  long long bound = static_cast<long long>(n) - 1;
  bound += wronskian_zero_counts[n - 1];
  if (n >= 2) bound += wronskian_zero_counts[n - 2];
  for (std::size_t i = 0; i + 2 < n; ++i) bound += 2 * wronskian_zero_counts[i];
  return bound;
}

}  // namespace posys::signchar
