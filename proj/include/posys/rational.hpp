#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace posys {

/// Exact rational scalar used throughout the coefficient-side computations.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

using RatVec = std::vector<Rat>;
using RealVec = std::vector<double>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Exact conversion; every binary64 value is a dyadic rational.
Rat rat_from_double(double x);

/// Accepts "p/q", integers, and decimal strings such as "1.392" or "-2.5e-3".
/// Decimal strings are read exactly (1.392 -> 174/125).
Rat rat_from_string(const std::string& text);

std::string rat_to_string(const Rat& r);

inline int sign_of(const Rat& r) {
  if (r > 0) return 1;
  if (r < 0) return -1;
  return 0;
}

/// Scales a rational vector to coprime integer entries, first nonzero positive.
/// The zero vector is returned unchanged.
void normalize_primitive(RatVec& v);

RealVec to_doubles(const RatVec& v);
RatVec to_rationals(const RealVec& v);

/// r^e for integer e (negative allowed; r must be nonzero then).
Rat pow_rat(const Rat& r, long e);

}  // namespace posys
