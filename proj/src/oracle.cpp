#include "posys/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "posys/errors.hpp"

namespace posys::oracle {

namespace {

// Solves the square system j * delta = -f in place; false when singular.
bool solve_linear(std::vector<RealVec>& j, RealVec& rhs) {
  const std::size_t n = rhs.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(j[i][k]) > std::abs(j[p][k])) p = i;
    if (std::abs(j[p][k]) < 1e-300) return false;
    std::swap(j[k], j[p]);
    std::swap(rhs[k], rhs[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      double f = j[i][k] / j[k][k];
      if (f == 0) continue;
      for (std::size_t c = k; c < n; ++c) j[i][c] -= f * j[k][c];
      rhs[i] -= f * rhs[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= j[k][c] * rhs[c];
    rhs[k] = s / j[k][k];
  }
  return true;
}

}  // namespace

std::vector<OracleSolution> multistart_solve(const framework::ProblemInstance& p,
                                             const OracleConfig& cfg) {
  const std::size_t n = p.num_variables();
  const std::size_t m = p.num_monomials();
  if (p.num_equations() != n)
    throw NonSquare("multistart_solve: the system must be square (n' = n)");
  if (cfg.starts < 1 || cfg.box_hi <= cfg.box_lo)
    throw std::invalid_argument("multistart_solve: bad configuration");

  RealVec log_c(m);
  for (std::size_t j = 0; j < m; ++j) log_c[j] = std::log(to_double(p.params[j]));
  RealMatrix a = to_real(p.coeff);

  auto monomials = [&](const RealVec& z, RealVec& w) {
    for (std::size_t j = 0; j < m; ++j) {
      double s = log_c[j];
      for (std::size_t k = 0; k < n; ++k) s += p.expo(k, j) * z[k];
      w[j] = std::exp(s);
    }
  };
  auto scaled_residual = [&](const RealVec& w) {
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double sum = 0, scale = 0;
      for (std::size_t j = 0; j < m; ++j) {
        double t = a(i, j) * w[j];
        sum += t;
        scale = std::max(scale, std::abs(t));
      }
      if (scale > 0) worst = std::max(worst, std::abs(sum) / scale);
    }
    return worst;
  };
  auto norm2 = [&](const RealVec& w) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double f = 0;
      for (std::size_t j = 0; j < m; ++j) f += a(i, j) * w[j];
      s += f * f;
    }
    return s;
  };

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uni(cfg.box_lo, cfg.box_hi);
  std::vector<RealVec> starts(cfg.starts, RealVec(n));
  for (auto& z : starts)
    for (double& v : z) v = uni(rng);

  std::vector<RealVec> found;  // log coordinates
  RealVec w(m), f(n), z(n);
  for (const auto& start : starts) {
    z = start;
    bool converged = false;
    for (int iter = 0; iter < 120; ++iter) {
      monomials(z, w);
      if (scaled_residual(w) <= cfg.polish_tol) {
        converged = true;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) {
        double s = 0;
        for (std::size_t j = 0; j < m; ++j) s += a(i, j) * w[j];
        f[i] = -s;
      }
      std::vector<RealVec> jac(n, RealVec(n, 0.0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
          double s = 0;
          for (std::size_t j = 0; j < m; ++j) s += a(i, j) * w[j] * p.expo(k, j);
          jac[i][k] = s;
        }
      RealVec step = f;
      if (!solve_linear(jac, step)) break;
      double len = 0;
      for (double v : step) len = std::max(len, std::abs(v));
      if (len > 10) {
        for (double& v : step) v *= 10 / len;
      }
      double base = norm2(w);
      double t = 1;
      RealVec cand(n);
      RealVec wc(m);
      for (int ls = 0; ls < 40; ++ls) {
        for (std::size_t k = 0; k < n; ++k) cand[k] = z[k] + t * step[k];
        monomials(cand, wc);
        if (norm2(wc) < base * (1 - 1e-4 * t) || t < 1e-9) break;
        t *= 0.5;
      }
      z = cand;
      bool inside = true;
      for (double v : z) inside = inside && std::abs(v) < std::abs(cfg.box_hi) + 20;
      if (!inside) break;
    }
    if (!converged) continue;
    bool duplicate = false;
    for (const auto& other : found) {
      double d = 0;
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(other[k] - z[k]));
      if (d <= cfg.dedup_radius) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) found.push_back(z);
  }

  std::sort(found.begin(), found.end());
  std::vector<OracleSolution> out;
  for (const auto& zf : found) {
    OracleSolution sol;
    sol.x.resize(n);
    for (std::size_t k = 0; k < n; ++k) sol.x[k] = std::exp(zf[k]);
    sol.residual = framework::residual(p, sol.x);
    out.push_back(std::move(sol));
  }
  return out;
}

GridCount grid_count(const std::function<double(double)>& f, double a, double b,
                     double resolution) {
  if (!(b > a)) throw std::invalid_argument("grid_count: empty interval");
  if (resolution > 1e-4 * (b - a))
    throw std::invalid_argument("grid_count: resolution coarser than 1e-4 of the interval");
  const std::size_t steps = static_cast<std::size_t>(std::ceil((b - a) / resolution));
  const double h = (b - a) / static_cast<double>(steps);

  GridCount out;
  std::vector<double> xs, vs;
  xs.reserve(steps - 1);
  for (std::size_t i = 1; i < steps; ++i) {
    double x = a + h * static_cast<double>(i);
    xs.push_back(x);
    vs.push_back(f(x));
  }

  // Crossings.
  int last_sign = 0;
  double last_x = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    int s = vs[i] > 0 ? 1 : (vs[i] < 0 ? -1 : 0);
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) {
      ++out.sign_changes;
      double lo = last_x, hi = xs[i], flo = f(lo);
      for (int it = 0; it < 100 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
        double midp = 0.5 * (lo + hi), fm = f(midp);
        if (fm == 0) {
          lo = hi = midp;
          break;
        }
        if ((fm > 0) == (flo > 0)) {
          lo = midp;
          flo = fm;
        } else {
          hi = midp;
        }
      }
      out.roots.push_back(0.5 * (lo + hi));
    }
    last_sign = s;
    last_x = xs[i];
  }

  // Tangential roots: local minima of |f| refined by ternary search, kept
  // when the refined value dips below 1e-12 without a sign change nearby.
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    double ai = std::abs(vs[i]);
    if (ai > std::abs(vs[i - 1]) || ai > std::abs(vs[i + 1])) continue;
    if (ai > h * h * 1e6) continue;  // nowhere near a tangency
    int s_l = vs[i - 1] > 0 ? 1 : (vs[i - 1] < 0 ? -1 : 0);
    int s_r = vs[i + 1] > 0 ? 1 : (vs[i + 1] < 0 ? -1 : 0);
    if (s_l != s_r) continue;  // handled as a crossing
    double lo = xs[i - 1], hi = xs[i + 1];
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
      double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (std::abs(f(m1)) < std::abs(f(m2)))
        hi = m2;
      else
        lo = m1;
    }
    double xstar = 0.5 * (lo + hi);
    if (std::abs(f(xstar)) < 1e-12) out.tangential.push_back(xstar);
  }
  return out;
}

}  // namespace posys::oracle
