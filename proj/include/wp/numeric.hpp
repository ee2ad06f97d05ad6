#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace wp {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int int_pow(const Int& base, unsigned long exp) {
  Int r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

inline Rat rat_pow(const Rat& base, unsigned long exp) {
  Rat r = 1, b = base;
  while (exp) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

// Largest s with s*s <= n.
inline Int isqrt_floor(const Int& n) {
  if (n < 0) return 0;
  if (n < 2) return n;
  Int x = Int(1) << (unsigned)((msb(n) / 2) + 1);
  for (;;) {
    Int y = (x + n / x) / 2;
    if (y >= x) break;
    x = y;
  }
  return x;
}

inline Int isqrt_ceil(const Int& n) {
  Int f = isqrt_floor(n);
  return f * f == n ? f : f + 1;
}

// Rational bounds on sqrt(r): [lo, hi] with lo <= sqrt(r) <= hi.
inline Rat sqrt_lower(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  return Rat(isqrt_floor(num * den), den);
}

inline Rat sqrt_upper(const Rat& r) {
  Int num = numerator(r), den = denominator(r);
  return Rat(isqrt_ceil(num * den), den);
}

inline std::string rat_to_string(const Rat& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

// Number of bits ~ log2, as an upper bound: 2^(bits(n)) > n >= 2^(bits(n)-1).
inline unsigned long bit_length(const Int& n) {
  if (n <= 0) return 0;
  return (unsigned long)msb(n) + 1;
}

}  // namespace wp
