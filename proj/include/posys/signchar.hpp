#pragma once

#include <optional>
#include <vector>

#include "posys/polyroots.hpp"
#include "posys/rational.hpp"

namespace posys::signchar {

/// Parameters of s_{alpha,beta}(l) = l^alpha (1-l)^beta on (0,1).
/// (0,0) is the constant function 1.
struct SignCharParams {
  double alpha = 0;
  double beta = 0;
};

/// Evaluated in log space; DomainError outside (0,1).
double sc_eval(const SignCharParams& p, double lambda);

/// s'_{a,b}(l) = s_{a-1,b-1}(l) (a(1-l) - b l)
double sc_deriv(const SignCharParams& p, double lambda);

enum class ExtremumKind { None, Max, Min };

struct Extremum {
  ExtremumKind kind = ExtremumKind::None;
  double location = 0;  // alpha/(alpha+beta) when kind != None
  double value = 0;
  std::optional<Rat> exact_value;  // available for integer parameters
};

/// Max for alpha,beta > 0, min for alpha,beta < 0, none for mixed signs.
Extremum sc_extremum(const SignCharParams& p);

enum class RootBranch { Whole, Minus, Plus };

/// Inverse of s_{alpha,beta} at y > 0. Whole requires a monotone function
/// (alpha*beta < 0, or exactly one of them zero); Minus/Plus invert the two
/// monotone pieces around the extremum and require y inside the range
/// (OutOfRange beyond tolerance). Bisection to 1e-14 plus a Newton polish.
double sc_root(const SignCharParams& p, double y, RootBranch branch);

/// As sc_root but with the target given as ln y, for extreme magnitudes.
double sc_root_log(const SignCharParams& p, double log_y, RootBranch branch);

struct TrinomialRoot {
  double x = 0;
  int multiplicity = 1;
};

/// All positive solutions of c1 x^{b1} + c2 x^{b2} = 1, ascending in x,
/// counted with multiplicity (a vanishing discriminant yields one double
/// root). Throws DegenerateExponents for b1 = b2 or a zero exponent.
std::vector<TrinomialRoot> trinomial_solve(double b1, double b2, double c1, double c2);

/// Discriminant of the b < 0 case: s^max_{1,|b|} - c1 c2^{|b|}; its sign
/// decides between zero and two solutions.
double trinomial_discriminant(double b1, double b2, double c1, double c2);

/// W(s_1,...,s_k) = s_{sum(alpha)-d, sum(beta)-d} * p_d with d = C(k,2) and
/// an exact polynomial p_d of degree at most d (k <= 3).
struct WronskianForm {
  double alpha_shift = 0;
  double beta_shift = 0;
  std::size_t order = 0;      // d
  polyroots::RatPoly poly;    // p_d, exact in the binary64-represented params
};

WronskianForm wronskian_signchar(const std::vector<SignCharParams>& params);

/// As above with exact rational parameters.
WronskianForm wronskian_signchar_exact(const std::vector<std::pair<Rat, Rat>>& params);

/// Distinct zeros of p_d on (0,1), by exact real-root isolation.
int wronskian_zero_count(const WronskianForm& w);

/// Signs of f and f' near the interval ends (limits allowed); unknown signs
/// stay unset.
struct EndpointData {
  std::optional<int> f_left;        // sign of f at the left end
  std::optional<int> f_right;       // sign of f at the right end
  std::optional<int> f_fprime_left; // sign of f(a) f'(a) (or its limit)
};

/// Tightest zero-count bound for f from Z(f') and endpoint information:
/// Z(f) <= Z(f')+1 always; <= Z(f') when the parity of Z(f') matches the
/// endpoint sign product; <= Z(f')-1 with the extra derivative condition.
int rolle_refined_bound(int zeros_of_derivative, const EndpointData& ends);

/// Z(f_1+...+f_n) <= n-1 + Z(W_n) + Z(W_{n-1}) + 2 sum_{i<=n-2} Z(W_i).
long long koiran_bound(const std::vector<long long>& wronskian_zero_counts);

}  // namespace posys::signchar
