#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "bubbles/bigint.hpp"
#include "bubbles/errors.hpp"
#include "bubbles/tables.hpp"

namespace bubbles {

/// Power series in NumVars variables with exact rational coefficients,
/// truncated modulo the monomial ideal (v_0^{orders[0]}, ..., v_k^{orders[k]}).
/// Exponents are exclusive upper bounds; nothing at or beyond them is stored.
template <std::size_t NumVars>
class TruncatedSeries {
 public:
  using Exponents = std::array<unsigned, NumVars>;
  using Terms = std::map<Exponents, ExactRational>;

  explicit TruncatedSeries(Exponents orders) : orders_(orders) {
    for (unsigned o : orders_) {
      if (o == 0) throw std::invalid_argument("truncation orders must be positive");
    }
  }

  static TruncatedSeries constant(Exponents orders, const ExactRational& c) {
    TruncatedSeries s(orders);
    s.add_term(Exponents{}, c);
    return s;
  }

  static TruncatedSeries monomial(Exponents orders, Exponents e, const ExactRational& c = 1) {
    TruncatedSeries s(orders);
    s.add_term(e, c);
    return s;
  }

  /// The series consisting of the single variable with index `var`.
  static TruncatedSeries variable(Exponents orders, std::size_t var) {
    Exponents e{};
    e.at(var) = 1;
    return monomial(orders, e);
  }

  const Exponents& orders() const { return orders_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool within(const Exponents& e) const {
    for (std::size_t i = 0; i < NumVars; ++i) {
      if (e[i] >= orders_[i]) return false;
    }
    return true;
  }

  ExactRational coefficient(const Exponents& e) const {
    if (!within(e)) throw TruncationError("coefficient requested beyond truncation order");
    auto it = terms_.find(e);
    return it == terms_.end() ? ExactRational(0) : it->second;
  }

  ExactRational constant_term() const { return coefficient(Exponents{}); }

  /// Adds c to the coefficient of e; terms beyond the truncation vanish.
  void add_term(const Exponents& e, const ExactRational& c) {
    if (!within(e) || c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    require_same_orders(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& o) {
    require_same_orders(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  TruncatedSeries& operator*=(const ExactRational& k) {
    if (k == 0) {
      terms_.clear();
    } else {
      for (auto& [e, c] : terms_) c *= k;
    }
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const ExactRational& k) { return a *= k; }
  friend TruncatedSeries operator*(const ExactRational& k, TruncatedSeries a) { return a *= k; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= ExactRational(-1); }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same_orders(b);
    TruncatedSeries out(a.orders_);
    ExactRational prod;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        // Terms are sorted lexicographically, so the leading exponent only grows.
        if (ea[0] + eb[0] >= a.orders_[0]) break;
        Exponents e;
        bool keep = true;
        for (std::size_t i = 0; i < NumVars; ++i) {
          e[i] = ea[i] + eb[i];
          if (e[i] >= a.orders_[i]) {
            keep = false;
            break;
          }
        }
        if (!keep) continue;
        mpq_mul(prod.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
        out.add_term(e, prod);
      }
    }
    return out;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void require_same_orders(const TruncatedSeries& o) const {
    if (orders_ != o.orders_) throw std::invalid_argument("series truncation orders differ");
  }

  Exponents orders_;
  Terms terms_;
};

/// Multiplicative inverse; requires a nonzero constant term.
template <std::size_t N>
TruncatedSeries<N> inverse(const TruncatedSeries<N>& a) {
  const ExactRational c = a.constant_term();
  if (c == 0) throw DomainError("series inverse requires a nonzero constant term");
  const ExactRational inv_c = 1 / c;
  // a = c (1 - u)  =>  1/a = (1/c) sum_k u^k; u is nilpotent under truncation.
  TruncatedSeries<N> u = TruncatedSeries<N>::constant(a.orders(), 1) - a * inv_c;
  TruncatedSeries<N> sum = TruncatedSeries<N>::constant(a.orders(), 1);
  TruncatedSeries<N> power = u;
  while (!power.is_zero()) {
    sum += power;
    power = power * u;
  }
  return sum * inv_c;
}

/// exp(a) = sum_k a^k / k!; requires a zero constant term.
template <std::size_t N>
TruncatedSeries<N> exp(const TruncatedSeries<N>& a) {
  if (a.constant_term() != 0) throw DomainError("series exp requires a zero constant term");
  TruncatedSeries<N> sum = TruncatedSeries<N>::constant(a.orders(), 1);
  TruncatedSeries<N> term = sum;
  for (unsigned long k = 1;; ++k) {
    term = term * a;
    if (term.is_zero()) break;
    term *= ExactRational(1, k);
    sum += term;
  }
  return sum;
}

template <std::size_t N>
TruncatedSeries<N> pow(const TruncatedSeries<N>& a, unsigned k) {
  TruncatedSeries<N> out = TruncatedSeries<N>::constant(a.orders(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * a;
  return out;
}

/// Series in (y, w): exponent index 0 is y, index 1 is w (or z = x^2 for the
/// matching-polynomial generating function).
using BivariateSeries = TruncatedSeries<2>;

/// Polynomial in an auxiliary variable t with BivariateSeries coefficients.
/// Used to integrate against e^{-t} dt term by term.
class SeriesInT {
 public:
  SeriesInT(BivariateSeries::Exponents orders, unsigned max_t_degree);

  static SeriesInT from_coefficient(const BivariateSeries& c, unsigned t_power, unsigned max_t_degree);

  /// sum_m c^m t^{2m} / m!, truncated at the t-degree cap.
  static SeriesInT exp_t_squared(const BivariateSeries& c, unsigned max_t_degree);

  unsigned max_t_degree() const { return static_cast<unsigned>(coeffs_.size()) - 1; }
  const BivariateSeries& coefficient(unsigned t_power) const;

  SeriesInT& operator+=(const SeriesInT& o);
  friend SeriesInT operator+(SeriesInT a, const SeriesInT& b) { return a += b; }
  friend SeriesInT operator*(const SeriesInT& a, const SeriesInT& b);
  friend SeriesInT operator*(const BivariateSeries& c, const SeriesInT& a);

  /// Replaces every t^k by k! = integral_0^inf t^k e^{-t} dt.
  BivariateSeries gamma_integrate() const;

  bool only_even_powers() const;

 private:
  std::vector<BivariateSeries> coeffs_;
};

struct PathMatchingNumbers {
  unsigned m = 0;
  /// rho[j] = number of j-edge matchings of the path on m vertices.
  std::vector<BigInt> rho;
};

/// L(x, y) = 1 / (1 - y (1 + z y)) with z = x^2, as a series in (y, z).
BivariateSeries matching_generating_function(unsigned order_y, unsigned order_z);

/// Read off the y^m coefficient of L(x, y).
PathMatchingNumbers path_matching_numbers(unsigned m);

/// d(n,0) = sum_j (-1)^j (2n-2j-1)!! rho_j for the path on 2n vertices.
BigInt dn0_by_inclusion_exclusion(unsigned n);

/// B(y, w) = sum B(n,p) y^n w^p from the closed-form t-integral, both
/// exponentials expanded in t^2 and integrated against e^{-t}.
/// Orders: y < order_n, w < 2 order_n. The y^0 w^0 coefficient is 1 (the
/// empty diagram is its own bubble of size 0).
BivariateSeries bubble_gf_closed_form(unsigned order_n);

/// B(y, w) from the bubble-marked matching generating function
///   (1 - y^2 L(x, ry))^{-2} (L(x, wry) - 1)
/// expanded in (r, w, x^2, y), with monomial r^{2q} w^p x^{2j} y^{2n} weighted
/// by (-1)^j (2(q-j)-1)!!. Same orders and convention as the closed form, but
/// without the y^0 term.
BivariateSeries bubble_gf_inclusion_exclusion(unsigned order_n);

/// Rows 1..n_max of the coefficient triangle. Throws TruncationError when the
/// series was not computed that far, InternalError on a non-integer entry.
BubbleTable bubble_table_from_series(const BivariateSeries& s, unsigned n_max);

/// Golden-test format: one line "n p numerator/denominator" per stored
/// monomial, in lexicographic exponent order.
std::string dump_series(const BivariateSeries& s);

}  // namespace bubbles
