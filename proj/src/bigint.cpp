#include "bubbles/bigint.hpp"

#include "bubbles/errors.hpp"

namespace bubbles {

BigInt factorial(unsigned long k) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), k);
  return r;
}

BigInt double_factorial(long k) {
  if (k < -1) throw DomainError("double factorial undefined below -1");
  if (k <= 0) return BigInt(1);
  BigInt r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

BigInt binomial(unsigned long n, unsigned long k) {
  if (k > n) return BigInt(0);
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt exact_divide(const BigInt& num, const BigInt& den) {
  if (den == 0) throw InternalError("exact_divide: division by zero");
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw InternalError("exact_divide: " + num.get_str() + " is not divisible by " +
                        den.get_str());
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw DomainError("zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const ExactRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace bubbles
