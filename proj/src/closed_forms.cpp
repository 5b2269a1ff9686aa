#include "bubbles/closed_forms.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bubbles/errors.hpp"

namespace bubbles {

namespace {

const double kE = std::exp(1.0);

void require_at_least_two(unsigned n, const char* what) {
  if (n < 2) {
    throw DomainError(std::string(what) + " is defined for n >= 2 (got n = " + std::to_string(n) + ")");
  }
}

BigInt pow2(unsigned k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

}  // namespace

BigInt total_bubbles(unsigned n) {
  if (n < 2) {
    throw DomainError("total_bubbles: closed form holds for n >= 2 (at n = 1 it evaluates to -1 "
                      "while the single short chord leaves no bubble)");
  }
  const BigInt num = factorial(2 * n - 2) * BigInt(4 * n - 5);
  return exact_divide(num, pow2(n - 1) * factorial(n - 1));
}

BigInt first_moment(unsigned n) {
  require_at_least_two(n, "first_moment");
  return exact_divide(factorial(2 * n - 1), pow2(n - 2) * factorial(n - 2));
}

ExactRational mean_bubble_size(unsigned n) {
  require_at_least_two(n, "mean_bubble_size");
  const BigInt nn(n);
  return make_rational(2 * (2 * nn - 1) * (nn - 1), 4 * nn - 5);
}

double asymptotic_trimmed_mean() { return (2.0 - 2.0 / kE) / (2.0 - 1.0 / kE); }

double AsymptoticDensity::operator()(double x) const {
  return kE * (6.0 - x) * std::exp(-x / 2.0) * norm_ / 2.0;
}

double AsymptoticDensity::at_zero() const { return 3.0 * kE * norm_; }

double rho(double x) {
  if (!(x > 0.0 && x <= 2.0)) throw DomainError("rho is defined on (0, 2]");
  return AsymptoticDensity{}(x);
}

double rho_by_k_sum(double x, unsigned k_max) {
  if (!(x > 0.0 && x <= 2.0)) throw DomainError("rho_by_k_sum is defined on (0, 2]");
  if (k_max == 0) throw DomainError("rho_by_k_sum needs k_max >= 1");
  // term_k = (2-x)^{k-1} / (2^{k-1} (k-1)!), built incrementally.
  const double half_gap = (2.0 - x) / 2.0;
  double term = 1.0;
  double sum = 0.0;
  for (unsigned k = 1; k <= k_max; ++k) {
    sum += (k + 1) * term;
    term *= half_gap / k;
  }
  return sum / (4.0 * kE - 2.0);
}

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol) {
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  double total = 0.0;
  // The boost tolerance is relative; scale it from the absolute contract
  // using a first coarse estimate of the integral's magnitude.
  const double scale = std::abs(Quadrature::integrate(f, a, b, 0, 0.0, &error));
  const double rel_tol = scale > 0.0 ? abs_tol / scale : abs_tol;
  total = Quadrature::integrate(f, a, b, 30, rel_tol, &error);
  if (error > abs_tol) throw InternalError("quadrature did not reach tolerance");
  return total;
}

BigInt heuristic_total_bubbles(unsigned n) {
  if (n < 1) throw DomainError("heuristic_total_bubbles requires n >= 1");
  const long m = static_cast<long>(n);
  return BigInt(2 * n - 1) * double_factorial(2 * m - 3) + double_factorial(2 * m - 1);
}

double poisson_bubble_count_estimate(unsigned n) {
  if (n < 1) throw DomainError("poisson_bubble_count_estimate requires n >= 1");
  if (n == 1) return 0.0;  // no bubbles at all for a single chord
  return make_rational(total_bubbles(n), diagram_count(n)).get_d();
}

}  // namespace bubbles
