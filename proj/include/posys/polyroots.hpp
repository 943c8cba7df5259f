#pragma once

#include <vector>

#include "posys/rational.hpp"

namespace posys::polyroots {

/// Univariate polynomial with exact rational coefficients, ascending order.
using RatPoly = std::vector<Rat>;

RatPoly trim(RatPoly p);
int degree(const RatPoly& p);  // -1 for the zero polynomial
bool is_zero(const RatPoly& p);

Rat eval(const RatPoly& p, const Rat& x);
double eval(const RatPoly& p, double x);
RatPoly derivative(const RatPoly& p);
RatPoly add(const RatPoly& a, const RatPoly& b);
RatPoly mul(const RatPoly& a, const RatPoly& b);
RatPoly scale(const RatPoly& a, const Rat& s);

/// p with repeated factors removed (p / gcd(p, p')).
RatPoly squarefree(const RatPoly& p);

/// Number of distinct real roots in the open interval (a, b).
/// Roots exactly at a or b are not counted.
int count_roots_open(const RatPoly& p, const Rat& a, const Rat& b);

/// Distinct real roots in (a, b), ascending, refined to binary64 accuracy.
std::vector<double> isolate_roots(const RatPoly& p, const Rat& a, const Rat& b);

}  // namespace posys::polyroots
