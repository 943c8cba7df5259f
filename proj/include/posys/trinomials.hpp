#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "posys/framework.hpp"
#include "posys/signchar.hpp"

namespace posys::trinomials {

/// Telescoping kernel f_{q,q'}(t) = q/(1+tq) - q'/(1+tq') on (-1,1).
double fqq(double q, double qp, double t);

/// Instance whose coefficient kernel is c ∘ span{1, q}: the problem reduces
/// to one equation f(t) = ybar* on (-1,1) with f(t) = prod (1+t q_i)^{b_i}.
struct SegmentProblem {
  framework::ProblemInstance rewritten;  // normalized instance, sorted columns
  framework::AuxMatrices aux;
  geometry::SegmentNormalForm nf;        // scale c and sorted q
  RatVec depgen;                         // b: generator of ker(B; 1^T), sorted order
  std::vector<Rat> partial_sums;         // s_i = b_1 + ... + b_i, i = 1..m-1
  std::vector<std::vector<std::size_t>> q_classes;  // runs of equal q
  RatVec collapsed;                      // b~_i: class sums of b
  std::vector<Rat> collapsed_partial;    // s~_i, i = 1..k-1
  double log_target = 0;                 // ln ybar* = -sum b_i ln c_i
};

SegmentProblem make_segment_problem(const framework::ProblemInstance& p);

/// Sign changes in a sequence, zeros skipped.
int sign_variations(const std::vector<Rat>& seq);

/// 1 + sgnvar of the collapsed partial sums (Descartes-style count bound for
/// the segment equation, with multiplicity).
int segment_rule_of_signs(const SegmentProblem& sp);

struct SegmentRoot {
  double t = 0;
  int multiplicity = 1;
  RealVec x;  // lifted solution
};

/// All solutions of f(t) = ybar* on (-1,1), critical points isolated exactly;
/// throws InfiniteSolutions when f is constant at the target level.
std::vector<SegmentRoot> segment_solve(const SegmentProblem& sp);

/// One connected component of the d = 1 curve of a two-trinomial system in
/// three variables: sampled points (lambda_1, lambda_2) of
/// s_{b1,b2}(l1) = cstar * s_{-b3,1}(l2).
struct CurveComponent {
  std::vector<std::array<double, 2>> samples;
};

/// Components per the case analysis on the exponent signs: one component
/// when a side is monotone, two when both sides peak, a single loop (or
/// nothing, NoSolutions) when the left side is a well.
std::vector<CurveComponent> curve_parametrize_d1(double b1, double b2, double b3, double cstar,
                                                 std::size_t samples_per_component = 512);

/// Standardized pair of trinomials: first equation solved as
/// w1 = lambda/cbar1, w2 = (1-lambda)/cbar2; second becomes
/// gamma1 s_{a1,b1}(lambda) + gamma2 s_{a2,b2}(lambda) = 1.
struct TwoTrinomialProblem {
  signchar::SignCharParams first, second;
  double gamma1 = 1, gamma2 = 1;
  std::array<double, 2> cbar{1, 1};
  RealMatrix back_subst;  // ln x = back_subst . ln w
  bool exact = false;
  std::array<Rat, 4> exact_expo;  // a1, b1, a2, b2 (exact when exact = true)
};

/// Carried by DegenerateToUnivariate: the first equation as a univariate
/// trinomial c1 u^{b1} + c2 u^{b2} = 1 along the monomial curve u = x^r.
struct UnivariateReduction {
  double b1 = 1, b2 = 0;
  double c1 = 1, c2 = 1;
  RealVec direction;  // r
};

struct DegenerateToUnivariate : std::runtime_error {
  UnivariateReduction reduced;
  explicit DegenerateToUnivariate(UnivariateReduction r)
      : std::runtime_error("two_trinomial_standardize: exponents reduce to one variable"),
        reduced(std::move(r)) {}
};

/// Requires two classes of three monomials in two variables; picks a class
/// with independent relative exponents as the solved equation.
TwoTrinomialProblem two_trinomial_standardize(const framework::ProblemInstance& p);

struct TwoTrinomialRoot {
  double lambda = 0;
  std::array<double, 2> x{0, 0};
  int multiplicity = 1;
};

/// All roots of gamma1 s1 + gamma2 s2 - 1 on (0,1), found by the exact
/// derivative chain (the bottom level is a cubic with rational coefficients),
/// mapped back through the monomial substitution.
std::vector<TwoTrinomialRoot> two_trinomial_solve(const TwoTrinomialProblem& tp);

/// Zero-count bound from the exponent sign pattern and the exact zero count
/// of the order-three Wronskian; never exceeds five.
int two_trinomial_bound(const TwoTrinomialProblem& tp);

/// (1/3) t^3 - t^2 + (8/3) t - 2 for one trinomial plus one t-nomial.
long long tnomial_bound(long long t);

struct TnomialTableRow {
  long long t = 0;
  Rat this_work;   // the bound above
  Rat li2003;      // 2^t - 2
  Rat koiran2015;  // (2/3) t^3 + 5 t
};

TnomialTableRow tnomial_comparison_row(long long t);

}  // namespace posys::trinomials
