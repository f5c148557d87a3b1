#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "groupalg/errors.hpp"

namespace groupalg {

// Counts overflow 64 bits quickly (|Hom| into big elementary abelian unit
// groups), so every hom count is arbitrary precision; coefficients in the
// rational module are exact rationals.  No floating point anywhere.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string to_string(const BigInt& v) { return v.str(); }

inline std::string to_string(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1)
    return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

inline BigInt bigint_pow(BigInt base, unsigned e) {
  BigInt r = 1;
  while (e) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

// Exact n-th root; nullopt when v is not a perfect n-th power.
inline std::optional<BigInt> exact_nth_root(const BigInt& v, unsigned n) {
  if (n == 0) throw BadParams("nth root with n = 0");
  if (v < 0) throw BadParams("nth root of negative value");
  if (v == 0 || v == 1 || n == 1) return v;
  BigInt lo = 1, hi = 1;
  while (bigint_pow(hi, n) < v) hi <<= 1;
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (bigint_pow(mid, n) < v)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (bigint_pow(lo, n) == v) return lo;
  return std::nullopt;
}

inline bool small_is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace groupalg
