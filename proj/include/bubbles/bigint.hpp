#pragma once

#include <gmpxx.h>

#include <string>

namespace bubbles {

using BigInt = mpz_class;
/// Reduced fraction with positive denominator.
using ExactRational = mpq_class;

BigInt factorial(unsigned long k);

/// k!! for k >= -1, with (-1)!! = 0!! = 1.
BigInt double_factorial(long k);

BigInt binomial(unsigned long n, unsigned long k);

/// Number of linear chord diagrams on 2n vertices, (2n-1)!!.
inline BigInt diagram_count(unsigned long n) {
  return double_factorial(2 * static_cast<long>(n) - 1);
}

/// Exact quotient; throws InternalError when the division is not exact.
BigInt exact_divide(const BigInt& num, const BigInt& den);

ExactRational make_rational(const BigInt& num, const BigInt& den);

inline std::string to_string(const BigInt& v) { return v.get_str(); }
std::string to_string(const ExactRational& q);

}  // namespace bubbles
