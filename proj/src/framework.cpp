#include "posys/framework.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "posys/errors.hpp"
#include "posys/linalg.hpp"

namespace posys::framework {

namespace {

void validate_common(const ProblemInstance& p) {
  const std::size_t m = p.num_monomials();
  if (p.expo.cols() != m) throw DimensionMismatch("instance: A and B disagree on monomial count");
  if (p.params.size() != m) throw DimensionMismatch("instance: c has wrong length");
  for (const Rat& c : p.params)
    if (c <= 0) throw std::invalid_argument("instance: parameters must be positive");
  if (linalg::rank(p.coeff) != p.coeff.rows())
    throw std::invalid_argument("instance: coefficient matrix is rank-deficient");
  if (!p.partition.covers(m))
    throw std::invalid_argument("instance: partition does not cover the columns");

  // Product structure: kernel dimensions per class must add up, and each
  // class must admit a strictly positive kernel vector.
  std::size_t total = 0;
  for (const auto& cls : p.partition.classes) {
    RatMatrix sub = p.coeff.select_cols(cls);
    total += cls.size() - linalg::rank(sub);
    geometry::extreme_rays_scone(sub);  // throws EmptyInterior
  }
  if (total != m - p.coeff.rows())
    throw std::invalid_argument("instance: kernel is not a direct product over the partition");
}

}  // namespace

ProblemInstance make_instance(RatMatrix coeff, RatMatrix expo, RatVec params,
                              std::optional<geometry::ClassPartition> partition, Tolerances tols) {
  ProblemInstance p;
  p.coeff = std::move(coeff);
  p.expo_rat = std::move(expo);
  p.expo = to_real(p.expo_rat);
  p.expo.tol = tols.rank;
  p.exact_exponents = true;
  p.params = std::move(params);
  p.tols = tols;
  p.partition = partition ? *partition : geometry::finest_partition(p.coeff);
  validate_common(p);
  return p;
}

ProblemInstance make_instance(RatMatrix coeff, RealMatrix expo, RatVec params,
                              std::optional<geometry::ClassPartition> partition, Tolerances tols) {
  ProblemInstance p;
  p.coeff = std::move(coeff);
  p.expo = std::move(expo);
  p.expo.tol = tols.rank;
  p.exact_exponents = false;
  p.params = std::move(params);
  p.tols = tols;
  p.partition = partition ? *partition : geometry::finest_partition(p.coeff);
  validate_common(p);
  return p;
}

AuxMatrices build_aux(const ProblemInstance& p) {
  const std::size_t m = p.num_monomials();
  const std::size_t ell = p.num_classes();

  AuxMatrices aux;
  aux.exact = p.exact_exponents;
  aux.incidence = RatMatrix(m, m - ell);
  aux.cayley = RatMatrix(ell, m);
  std::size_t col = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    const auto& cls = p.partition.classes[i];
    const std::size_t hub = cls.back();
    for (std::size_t k = 0; k + 1 < cls.size(); ++k) {
      aux.incidence(cls[k], col) = 1;
      aux.incidence(hub, col) = -1;
      ++col;
    }
    for (std::size_t j : cls) aux.cayley(i, j) = 1;
  }
  aux.coeff_prime = RatMatrix::vstack(p.coeff, aux.cayley);

  RatMatrix ji = aux.cayley * aux.incidence;
  for (std::size_t i = 0; i < ji.rows(); ++i)
    for (std::size_t j = 0; j < ji.cols(); ++j)
      if (ji(i, j) != 0) throw std::logic_error("build_aux: J I != 0");

  RealMatrix incidence_real = to_real(aux.incidence);
  RealMatrix cayley_real = to_real(aux.cayley);

  if (p.exact_exponents) {
    aux.diff_rat = p.expo_rat * aux.incidence;
    aux.gale_rat = linalg::gale_dual(aux.diff_rat);
    aux.gale_lifted_rat = aux.incidence * aux.gale_rat;
    aux.geninv_rat = linalg::generalized_inverse(aux.diff_rat);
    aux.lift_rat = aux.incidence * aux.geninv_rat;
    aux.expo_prime_rat = RatMatrix::vstack(p.expo_rat, aux.cayley);
    aux.free_directions_rat = linalg::kernel_basis(aux.diff_rat.transposed());

    // Defining identities, exact.
    RatMatrix check = aux.expo_prime_rat * aux.gale_lifted_rat;
    for (std::size_t i = 0; i < check.rows(); ++i)
      for (std::size_t j = 0; j < check.cols(); ++j)
        if (check(i, j) != 0) throw std::logic_error("build_aux: B' G' != 0");
    RatMatrix mmm = aux.diff_rat * aux.geninv_rat * aux.diff_rat;
    if (!mmm.same_entries(aux.diff_rat)) throw std::logic_error("build_aux: M M* M != M");

    aux.diff = to_real(aux.diff_rat);
    aux.gale = to_real(aux.gale_rat);
    aux.gale_lifted = to_real(aux.gale_lifted_rat);
    aux.geninv = to_real(aux.geninv_rat);
    aux.lift = to_real(aux.lift_rat);
    aux.expo_prime = to_real(aux.expo_prime_rat);
    for (const auto& v : aux.free_directions_rat) aux.free_directions.push_back(to_doubles(v));
    aux.dependency = aux.gale_rat.cols();
  } else {
    aux.diff = p.expo * incidence_real;
    aux.diff.tol = p.tols.rank;
    aux.gale = linalg::gale_dual(aux.diff);
    aux.gale_lifted = incidence_real * aux.gale;
    aux.geninv = linalg::generalized_inverse(aux.diff);
    aux.lift = incidence_real * aux.geninv;
    aux.expo_prime = RealMatrix::vstack(p.expo, cayley_real);
    RealMatrix diff_t = aux.diff.transposed();
    diff_t.tol = p.tols.rank;
    aux.free_directions = linalg::kernel_basis(diff_t);
    aux.dependency = aux.gale.cols();

    double scale = 0;
    for (std::size_t i = 0; i < aux.diff.rows(); ++i)
      for (std::size_t j = 0; j < aux.diff.cols(); ++j)
        scale = std::max(scale, std::abs(aux.diff(i, j)));
    RealMatrix mmm = aux.diff * aux.geninv * aux.diff;
    for (std::size_t i = 0; i < mmm.rows(); ++i)
      for (std::size_t j = 0; j < mmm.cols(); ++j)
        if (std::abs(mmm(i, j) - aux.diff(i, j)) > 1e-10 * std::max(1.0, scale))
          throw std::logic_error("build_aux: M M* M deviates from M");
  }
  return aux;
}

Classification classify(const ProblemInstance& p) {
  AuxMatrices aux = build_aux(p);
  Classification cl;
  cl.num_classes = p.num_classes();
  cl.num_monomials = p.num_monomials();
  cl.num_variables = p.num_variables();
  cl.num_equations = p.num_equations();
  cl.dependency = aux.dependency;
  const std::size_t cols = cl.num_monomials - cl.num_classes;
  cl.dim_difference = cols - cl.dependency;  // rank-nullity for M
  cl.dim_polytope = cl.num_monomials - cl.num_classes - cl.num_equations;
  cl.generic = cl.dim_difference == std::min(cl.num_variables, cols);
  if (!cl.generic)
    cl.kind = SystemCase::NonGeneric;
  else if (cl.num_monomials < cl.num_variables + cl.num_classes)
    cl.kind = SystemCase::DependencyZeroSubspace;
  else if (cl.num_monomials == cl.num_variables + cl.num_classes)
    cl.kind = SystemCase::DependencyZeroFull;
  else
    cl.kind = SystemCase::DependencyPositive;
  return cl;
}

std::vector<DependencyCondition> dependency_conditions(const AuxMatrices& aux, const RatVec& params) {
  std::vector<DependencyCondition> conds;
  const std::size_t m = params.size();
  RealVec log_c(m);
  for (std::size_t j = 0; j < m; ++j) log_c[j] = std::log(to_double(params[j]));
  for (std::size_t k = 0; k < aux.dependency; ++k) {
    DependencyCondition c;
    c.exponent = aux.gale_lifted.col(k);
    if (aux.exact) c.exponent_rat = aux.gale_lifted_rat.col(k);
    c.log_target = linalg::dot(c.exponent, log_c);
    conds.push_back(std::move(c));
  }
  return conds;
}

double condition_residual(const std::vector<DependencyCondition>& conds, const RealVec& y) {
  RealVec log_y(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] <= 0) throw DomainError("condition_residual: y must be positive");
    log_y[j] = std::log(y[j]);
  }
  double worst = 0;
  for (const auto& c : conds)
    worst = std::max(worst, std::abs(linalg::dot(c.exponent, log_y) - c.log_target));
  return worst;
}

RealVec lift_solution(const RealVec& y, const AuxMatrices& aux, const RatVec& params,
                      double cond_tol) {
  const std::size_t m = params.size();
  if (y.size() != m) throw DimensionMismatch("lift_solution: y has wrong length");
  auto conds = dependency_conditions(aux, params);
  double r = condition_residual(conds, y);
  if (r > cond_tol)
    throw ConditionViolated("lift_solution: dependency conditions violated (residual " +
                            std::to_string(r) + ")");
  RealVec log_ratio(m);
  for (std::size_t j = 0; j < m; ++j) log_ratio[j] = std::log(y[j]) - std::log(to_double(params[j]));
  const std::size_t n = aux.lift.cols();
  RealVec x(n);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0;
    for (std::size_t j = 0; j < m; ++j) s += aux.lift(j, k) * log_ratio[j];
    x[k] = std::exp(s);
  }
  return x;
}

RealVec scale_along(const RealVec& x, const std::vector<RealVec>& directions, const RealVec& coords) {
  if (coords.size() != directions.size())
    throw DimensionMismatch("scale_along: one coordinate per direction required");
  RealVec out = x;
  for (std::size_t k = 0; k < directions.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= std::exp(coords[k] * directions[k][i]);
  return out;
}

RealVec SolutionParametrization::polytope_point(const std::vector<RealVec>& weights) const {
  if (weights.size() != partition.count())
    throw DimensionMismatch("polytope_point: one weight vector per class required");
  RealVec y(params.size(), 0.0);
  for (std::size_t i = 0; i < partition.count(); ++i) {
    const auto& cls = partition.classes[i];
    const auto& vertices = geo.classes[i].vertices;
    if (weights[i].size() != vertices.size())
      throw DimensionMismatch("polytope_point: weight count differs from vertex count");
    double total = 0;
    for (double w : weights[i]) {
      if (w <= 0) throw DomainError("polytope_point: weights must be positive");
      total += w;
    }
    for (std::size_t k = 0; k < vertices.size(); ++k) {
      double w = weights[i][k] / total;
      for (std::size_t j = 0; j < cls.size(); ++j) y[cls[j]] += w * to_double(vertices[k][j]);
    }
  }
  return y;
}

RealVec SolutionParametrization::evaluate(const std::vector<RealVec>& weights,
                                          const RealVec& log_free) const {
  RealVec y = polytope_point(weights);
  RealVec log_ratio(y.size());
  for (std::size_t j = 0; j < y.size(); ++j)
    log_ratio[j] = std::log(y[j]) - std::log(to_double(params[j]));
  RealVec x(lift.cols());
  for (std::size_t k = 0; k < x.size(); ++k) {
    double s = 0;
    for (std::size_t j = 0; j < y.size(); ++j) s += lift(j, k) * log_ratio[j];
    x[k] = std::exp(s);
  }
  return scale_along(x, free_directions, log_free);
}

SolutionParametrization solution_set_d0(const ProblemInstance& p) {
  AuxMatrices aux = build_aux(p);
  if (aux.dependency != 0)
    throw NotDependencyZero("solution_set_d0: monomial dependency is " +
                            std::to_string(aux.dependency));
  SolutionParametrization sp;
  sp.lift = aux.lift;
  sp.params = p.params;
  sp.geo = geometry::coefficient_geometry(p.coeff, p.partition);
  sp.partition = p.partition;
  sp.free_directions = aux.free_directions;
  sp.conditions = {};
  sp.unique = p.num_equations() == p.num_variables();
  return sp;
}

RatMatrix binomial_form(const RatVec& ybar, const geometry::ClassPartition& partition) {
  const std::size_t m = ybar.size();
  if (!partition.covers(m)) throw DimensionMismatch("binomial_form: partition mismatch");
  for (const Rat& v : ybar)
    if (v <= 0) throw std::invalid_argument("binomial_form: ybar must be positive");
  RatMatrix out(m - partition.count(), m);
  std::size_t row = 0;
  for (const auto& cls : partition.classes) {
    const std::size_t hub = cls.back();
    for (std::size_t k = 0; k + 1 < cls.size(); ++k) {
      out(row, cls[k]) = 1 / ybar[cls[k]];
      out(row, hub) = -1 / ybar[hub];
      ++row;
    }
  }
  return out;
}

std::vector<ProblemInstance> decompose(const ProblemInstance& p) {
  if (p.num_classes() == 1) return {p};
  AuxMatrices aux = build_aux(p);

  // D is a compatible product iff the per-class dependency dimensions add up
  // to d; each class dependency space is ker(B_i; 1^T).
  std::size_t total = 0;
  std::vector<std::size_t> class_dims;
  for (const auto& cls : p.partition.classes) {
    std::size_t di;
    if (p.exact_exponents) {
      RatMatrix bi = p.expo_rat.select_cols(cls);
      RatMatrix ones(1, cls.size(), Rat(1));
      di = cls.size() - linalg::rank(RatMatrix::vstack(bi, ones));
    } else {
      RealMatrix bi = p.expo.select_cols(cls);
      RealMatrix ones(1, cls.size(), 1.0);
      RealMatrix stacked = RealMatrix::vstack(bi, ones);
      stacked.tol = p.tols.rank;
      di = cls.size() - linalg::rank(stacked);
    }
    class_dims.push_back(di);
    total += di;
  }
  if (total != aux.dependency)
    throw NotDecomposable("decompose: dependency subspace is not a product over the classes");

  std::vector<ProblemInstance> parts;
  for (const auto& cls : p.partition.classes) {
    RatMatrix sub = p.coeff.select_cols(cls);
    RatMatrix rows = linalg::row_space_basis(sub);
    RatVec c_i;
    for (std::size_t j : cls) c_i.push_back(p.params[j]);
    if (p.exact_exponents) {
      parts.push_back(make_instance(rows, p.expo_rat.select_cols(cls), c_i,
                                    geometry::ClassPartition::single(cls.size()), p.tols));
    } else {
      parts.push_back(make_instance(rows, p.expo.select_cols(cls), c_i,
                                    geometry::ClassPartition::single(cls.size()), p.tols));
    }
  }
  return parts;
}

namespace {

std::vector<RatVec> require_exact_kernel(const ProblemInstance& p, const RatMatrix& mat) {
  if (!p.exact_exponents)
    throw std::invalid_argument("certificates require exact (rational) exponents");
  return linalg::kernel_basis(mat);
}

}  // namespace

UniquenessCertificate certify_uniqueness(const ProblemInstance& p) {
  const std::size_t m = p.num_monomials();
  if (m > 12) throw DimensionTooLarge("certify_uniqueness: more than 12 monomials");
  AuxMatrices aux = build_aux(p);
  auto ker_aprime = require_exact_kernel(p, aux.coeff_prime);
  auto dperp = linalg::kernel_basis(aux.gale_lifted_rat.transposed());

  auto signs = geometry::sign_vectors(ker_aprime, m);
  for (const auto& sigma : signs) {
    if (sigma.is_zero()) continue;
    std::vector<geometry::SignReq> req(m);
    for (std::size_t j = 0; j < m; ++j) req[j] = static_cast<geometry::SignReq>(sigma.s[j]);
    if (geometry::subspace_sign_feasible(dperp, req)) return {false, sigma};
  }
  return {true, std::nullopt};
}

bool certify_unique_existence(const ProblemInstance& p) {
  const std::size_t m = p.num_monomials();
  if (m > 12) throw DimensionTooLarge("certify_unique_existence: more than 12 monomials");
  AuxMatrices aux = build_aux(p);
  auto ker_aprime = require_exact_kernel(p, aux.coeff_prime);
  if (ker_aprime.size() != aux.dependency) return false;

  std::vector<RatVec> dep_basis;
  for (std::size_t k = 0; k < aux.gale_lifted_rat.cols(); ++k)
    dep_basis.push_back(aux.gale_lifted_rat.col(k));

  auto signs = geometry::sign_vectors(ker_aprime, m);
  for (const auto& sigma : signs) {
    if (sigma.is_zero()) continue;
    // sigma is in the lower closure of sign(D) iff some z in D has
    // z_j sigma_j > 0 on the support of sigma.
    std::vector<geometry::SignReq> req(m, geometry::SignReq::Any);
    for (std::size_t j = 0; j < m; ++j)
      if (sigma.s[j] != 0) req[j] = static_cast<geometry::SignReq>(sigma.s[j]);
    if (!geometry::subspace_sign_feasible(dep_basis, req)) return false;
  }
  return true;
}

double residual(const ProblemInstance& p, const RealVec& x) {
  const std::size_t m = p.num_monomials();
  if (x.size() != p.num_variables()) throw DimensionMismatch("residual: x has wrong length");
  RealVec log_x(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] <= 0) throw DomainError("residual: x must be positive");
    log_x[k] = std::log(x[k]);
  }
  RealVec monomial(m);
  for (std::size_t j = 0; j < m; ++j) {
    double s = std::log(to_double(p.params[j]));
    for (std::size_t k = 0; k < x.size(); ++k) s += p.expo(k, j) * log_x[k];
    monomial[j] = std::exp(s);
  }
  double worst = 0;
  for (std::size_t i = 0; i < p.num_equations(); ++i) {
    double sum = 0, scale = 0;
    for (std::size_t j = 0; j < m; ++j) {
      double term = to_double(p.coeff(i, j)) * monomial[j];
      sum += term;
      scale = std::max(scale, std::abs(term));
    }
    if (scale > 0) worst = std::max(worst, std::abs(sum) / scale);
  }
  return worst;
}

}  // namespace posys::framework
