#pragma once

#include <functional>

#include "bubbles/bigint.hpp"

namespace bubbles {

/// Total bubbles over all diagrams with n chords,
/// (2n-2)! (4n-5) / (2^{n-1} (n-1)!). Valid for n >= 2; at n = 1 the formula
/// gives -1 while the true count is 0, so n < 2 is a DomainError.
BigInt total_bubbles(unsigned n);

/// Sum over p of p B(n,p) = (2n-1)! / (2^{n-2} (n-2)!), n >= 2.
BigInt first_moment(unsigned n);

/// Mean bubble size 2(2n-1)(n-1)/(4n-5), reduced, n >= 2.
ExactRational mean_bubble_size(unsigned n);

/// Large-n mean of bubble sizes excluding whole-diagram bubbles, in units of
/// n: (2 - 2/e) / (2 - 1/e).
double asymptotic_trimmed_mean();

/// Limiting density of x = p/(n-1) over (0, 2], whole-diagram bubbles excluded:
///   rho(x) = e (6 - x) e^{-x/2} / (2 (4e - 2)).
class AsymptoticDensity {
 public:
  double operator()(double x) const;
  /// 1 / (4e - 2), the prefactor of the short-chord sum.
  double normalization() const { return norm_; }
  double at_zero() const;  // right limit at 0: 3e / (4e - 2)

 private:
  double norm_ = 1.0 / (4.0 * 2.718281828459045235360287 - 2.0);
};

/// Throws DomainError outside (0, 2].
double rho(double x);

/// Partial sum (1/(4e-2)) sum_{k=1}^{k_max} (k+1) (2-x)^{k-1} / (2^{k-1} (k-1)!).
double rho_by_k_sum(double x, unsigned k_max);

/// Adaptive Gauss-Kronrod quadrature on [a, b] to the given absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol = 1e-12);

/// Estimate counting positions of a single short chord plus one bubble per
/// diagram: (2n-1)(2n-3)!! + (2n-1)!!. n >= 1.
BigInt heuristic_total_bubbles(unsigned n);

/// total_bubbles(n) / (2n-1)!!, which tends to 2 as n grows.
double poisson_bubble_count_estimate(unsigned n);

}  // namespace bubbles
