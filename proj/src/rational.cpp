#include "posys/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace posys {

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: value not finite");
  return Rat(x);  // cpp_rational converts binary64 exactly
}

Rat rat_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rat_from_string: zero denominator in '" + text + "'");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rat(num, den);
  }

  // Decimal / scientific form: sign, digits, optional '.', optional exponent.
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = (s[pos] == '-');
    ++pos;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool seen_digit = false, seen_dot = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mantissa = mantissa * 10 + (c - '0');
      if (seen_dot) ++frac_digits;
      seen_digit = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw std::invalid_argument("rat_from_string: bad number '" + text + "'");
  long exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    exp10 = std::stol(s.substr(pos + 1));
    pos = s.size();
  }
  if (pos != s.size()) throw std::invalid_argument("rat_from_string: bad number '" + text + "'");

  long shift = exp10 - frac_digits;
  BigInt num = mantissa, den = 1;
  if (shift >= 0)
    num *= boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(shift));
  else
    den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(-shift));
  if (neg) num = -num;
  return Rat(num, den);
}

std::string rat_to_string(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

void normalize_primitive(RatVec& v) {
  BigInt lcm_den = 1, gcd_num = 0;
  for (const Rat& x : v) {
    lcm_den = boost::multiprecision::lcm(lcm_den, denominator(x));
  }
  RatVec scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) scaled[i] = v[i] * lcm_den;
  for (const Rat& x : scaled) gcd_num = boost::multiprecision::gcd(gcd_num, numerator(x));
  if (gcd_num == 0) return;  // zero vector
  int lead = 0;
  for (const Rat& x : scaled) {
    if (x != 0) {
      lead = sign_of(x);
      break;
    }
  }
  Rat scale(lead < 0 ? -gcd_num : gcd_num, 1);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scaled[i] / scale;
}

RealVec to_doubles(const RatVec& v) {
  RealVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
  return out;
}

RatVec to_rationals(const RealVec& v) {
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = rat_from_double(v[i]);
  return out;
}

Rat pow_rat(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  if (r == 0 && e < 0) throw std::invalid_argument("pow_rat: zero base, negative exponent");
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat base = r, acc(1);
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  if (invert) acc = 1 / acc;
  return acc;
}

}  // namespace posys
