#pragma once

#include <optional>
#include <vector>

#include "posys/geometry.hpp"
#include "posys/matrix.hpp"

namespace posys::framework {

struct Tolerances {
  double rank = 1e-10;       // relative rank threshold for binary64 exponents
  double condition = 1e-9;   // log-space gate for dependency conditions
};

/// The triple (A, B, c) with a class partition: n' generalized polynomial
/// equations A (c ∘ x^B) = 0 in n positive variables and m monomials.
struct ProblemInstance {
  RatMatrix coeff;              // A, n' x m, full row rank
  RatMatrix expo_rat;           // B when exponents are exact; empty otherwise
  RealMatrix expo;              // B, binary64 view (always set)
  bool exact_exponents = false;
  RatVec params;                // c > 0, length m
  geometry::ClassPartition partition;
  Tolerances tols;

  std::size_t num_monomials() const { return coeff.cols(); }
  std::size_t num_equations() const { return coeff.rows(); }
  std::size_t num_variables() const { return expo.rows(); }
  std::size_t num_classes() const { return partition.count(); }
};

/// Validates shapes, positivity of c, full row rank, the product structure of
/// the partition (computing the finest one when absent), and the existence of
/// a positive kernel vector in every class.
ProblemInstance make_instance(RatMatrix coeff, RatMatrix expo, RatVec params,
                              std::optional<geometry::ClassPartition> partition = {},
                              Tolerances tols = {});
ProblemInstance make_instance(RatMatrix coeff, RealMatrix expo, RatVec params,
                              std::optional<geometry::ClassPartition> partition = {},
                              Tolerances tols = {});

/// Derived matrices: block incidence I, block Cayley J, difference matrix
/// M = B I, Gale duals G and G' = I G, a generalized inverse M*, the lift
/// exponent matrix E = I M*, and the stacked B' = (B; J), A' = (A; J).
/// Exponent-side members carry exact values only for exact instances; the
/// binary64 mirrors are always populated.
struct AuxMatrices {
  RatMatrix incidence;       // I : m x (m - ℓ)
  RatMatrix cayley;          // J : ℓ x m
  RatMatrix coeff_prime;     // A' : (n' + ℓ) x m, exact
  bool exact = false;

  RatMatrix diff_rat, gale_rat, gale_lifted_rat, geninv_rat, lift_rat, expo_prime_rat;
  RealMatrix diff, gale, gale_lifted, geninv, lift, expo_prime;

  std::vector<RealVec> free_directions;      // basis of L-perp = ker M^T
  std::vector<RatVec> free_directions_rat;   // exact counterpart when available
  std::size_t dependency = 0;                // d = dim ker M = columns of G'
};

AuxMatrices build_aux(const ProblemInstance& p);

enum class SystemCase {
  DependencyZeroSubspace,  // m < n + ℓ: explicit parametrization, dim L < n
  DependencyZeroFull,      // m = n + ℓ: explicit parametrization, L = R^n
  DependencyPositive,      // m > n + ℓ: d = m - ℓ - n conditions on P
  NonGeneric,
};

struct Classification {
  std::size_t num_classes = 0, num_monomials = 0, num_variables = 0, num_equations = 0;
  std::size_t dependency = 0;      // d
  std::size_t dim_difference = 0;  // dim L = rank(B I)
  std::size_t dim_polytope = 0;    // m - ℓ - n'
  bool generic = false;
  SystemCase kind = SystemCase::NonGeneric;
};

Classification classify(const ProblemInstance& p);

/// One monomial condition y^z = c^z per column z of G', evaluated in log
/// space: residual(y) = z . (ln y - ln c).
struct DependencyCondition {
  RealVec exponent;          // z
  double log_target = 0;     // ln(c^z)
  RatVec exponent_rat;       // exact z when available (may be empty)
};

std::vector<DependencyCondition> dependency_conditions(const AuxMatrices& aux, const RatVec& params);

/// max_j |z_j . ln y - ln c^{z_j}|
double condition_residual(const std::vector<DependencyCondition>& conds, const RealVec& y);

/// x = (y ∘ c^{-1})^E for y in the positive polytope satisfying the
/// dependency conditions within cond_tol (log-space max norm); throws
/// ConditionViolated otherwise.
RealVec lift_solution(const RealVec& y, const AuxMatrices& aux, const RatVec& params,
                      double cond_tol = 1e-9);

/// x ∘ exp(sum_k coords[k] * direction_k)
RealVec scale_along(const RealVec& x, const std::vector<RealVec>& directions, const RealVec& coords);

/// Evaluable description of the solution set: vertices of P per class, the
/// lift data, the free directions e^{L-perp}, and the condition list (empty
/// when d = 0).
struct SolutionParametrization {
  RealMatrix lift;                       // E
  RatVec params;
  geometry::CoefficientGeometry geo;
  geometry::ClassPartition partition;
  std::vector<RealVec> free_directions;
  std::vector<DependencyCondition> conditions;
  bool unique = false;                   // square d = 0 case

  /// weights[i] are positive barycentric weights over the vertices of class i
  /// (normalized internally); log_free are coordinates along free_directions.
  RealVec evaluate(const std::vector<RealVec>& weights, const RealVec& log_free) const;
  /// The y ∈ P_> assembled from the weights, in original column order.
  RealVec polytope_point(const std::vector<RealVec>& weights) const;
};

/// Explicit parametrization for dependency zero; throws NotDependencyZero.
SolutionParametrization solution_set_d0(const ProblemInstance& p);

/// Binomial normal form I^T diag(ybar^{-1}) of the cone through ybar > 0.
RatMatrix binomial_form(const RatVec& ybar, const geometry::ClassPartition& partition);

/// Splits the instance into independent per-class subproblems when the
/// dependency subspace is a compatible direct product; NotDecomposable
/// otherwise. A single class returns the instance unchanged.
std::vector<ProblemInstance> decompose(const ProblemInstance& p);

struct UniquenessCertificate {
  bool certified = false;
  std::optional<geometry::SignVector> witness;  // nonzero common sign vector
};

/// sign(ker A') ∩ sign(D-perp) = {0} implies at most one solution on the
/// polytope for every c > 0. Exact; requires rational exponents and m <= 12.
UniquenessCertificate certify_uniqueness(const ProblemInstance& p);

/// dim(ker A') = d together with sign(ker A') ⊆ sign(D)^↓ implies exactly one
/// solution on the polytope for every c > 0 (robust to small exponent
/// perturbations). Exact; requires rational exponents and m <= 12.
bool certify_unique_existence(const ProblemInstance& p);

/// max over equations of |sum_j a_ij c_j x^{b_j}|, each equation scaled by
/// its largest monomial magnitude.
double residual(const ProblemInstance& p, const RealVec& x);

}  // namespace posys::framework
