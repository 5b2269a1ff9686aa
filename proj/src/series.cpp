#include "bubbles/series.hpp"

#include <sstream>

namespace bubbles {

namespace {

using Bi = BivariateSeries;
using Exp2 = Bi::Exponents;

// Variables of the bubble-marked generating function.
using Quad = TruncatedSeries<4>;
constexpr std::size_t kR = 0;
constexpr std::size_t kW = 1;
constexpr std::size_t kZ = 2;  // x^2
constexpr std::size_t kY = 3;

void require_order(unsigned order_n) {
  if (order_n == 0) throw std::invalid_argument("order_n must be at least 1");
}

// 1 / (1 - v (1 + z v)) for a series v in the four-variable ring.
Quad matching_gf_at(const Quad& v) {
  const Quad one = Quad::constant(v.orders(), 1);
  const Quad z = Quad::variable(v.orders(), kZ);
  return inverse(one - v - z * v * v);
}

}  // namespace

SeriesInT::SeriesInT(Exp2 orders, unsigned max_t_degree) : coeffs_(max_t_degree + 1, Bi(orders)) {}

SeriesInT SeriesInT::from_coefficient(const Bi& c, unsigned t_power, unsigned max_t_degree) {
  SeriesInT s(c.orders(), max_t_degree);
  if (t_power <= max_t_degree) s.coeffs_[t_power] = c;
  return s;
}

SeriesInT SeriesInT::exp_t_squared(const Bi& c, unsigned max_t_degree) {
  SeriesInT s(c.orders(), max_t_degree);
  Bi term = Bi::constant(c.orders(), 1);
  for (unsigned long m = 0; 2 * m <= max_t_degree && !term.is_zero(); ++m) {
    s.coeffs_[2 * m] = term;
    term = term * c * ExactRational(1, m + 1);
  }
  return s;
}

const Bi& SeriesInT::coefficient(unsigned t_power) const {
  if (t_power >= coeffs_.size()) throw TruncationError("t power beyond the degree cap");
  return coeffs_[t_power];
}

SeriesInT& SeriesInT::operator+=(const SeriesInT& o) {
  if (o.coeffs_.size() != coeffs_.size()) throw std::invalid_argument("t-degree caps differ");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

SeriesInT operator*(const SeriesInT& a, const SeriesInT& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) throw std::invalid_argument("t-degree caps differ");
  SeriesInT out(a.coeffs_.front().orders(), a.max_t_degree());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.coeffs_.size(); ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

SeriesInT operator*(const Bi& c, const SeriesInT& a) {
  SeriesInT out = a;
  for (auto& k : out.coeffs_) {
    if (!k.is_zero()) k = c * k;
  }
  return out;
}

Bi SeriesInT::gamma_integrate() const {
  Bi out(coeffs_.front().orders());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    out += coeffs_[k] * ExactRational(factorial(k));
  }
  return out;
}

bool SeriesInT::only_even_powers() const {
  for (std::size_t k = 1; k < coeffs_.size(); k += 2) {
    if (!coeffs_[k].is_zero()) return false;
  }
  return true;
}

Bi matching_generating_function(unsigned order_y, unsigned order_z) {
  const Exp2 orders{order_y, order_z};
  const Bi one = Bi::constant(orders, 1);
  const Bi y = Bi::variable(orders, 0);
  const Bi z = Bi::variable(orders, 1);
  return inverse(one - y * (one + z * y));
}

PathMatchingNumbers path_matching_numbers(unsigned m) {
  const unsigned max_j = m / 2;
  const Bi gf = matching_generating_function(m + 1, max_j + 1);
  PathMatchingNumbers out{m, {}};
  for (unsigned j = 0; j <= max_j; ++j) {
    const ExactRational c = gf.coefficient({m, j});
    if (c.get_den() != 1) throw InternalError("non-integer matching number");
    out.rho.push_back(c.get_num());
  }
  return out;
}

BigInt dn0_by_inclusion_exclusion(unsigned n) {
  const PathMatchingNumbers pm = path_matching_numbers(2 * n);
  BigInt sum = 0;
  for (unsigned j = 0; j <= n; ++j) {
    const BigInt term = double_factorial(2 * static_cast<long>(n - j) - 1) * pm.rho[j];
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

BivariateSeries bubble_gf_closed_form(unsigned order_n) {
  require_order(order_n);
  const Exp2 orders{order_n, 2 * order_n};
  // t^2 always arrives with at least one power of y, so t^{2m} with
  // m >= order_n cannot survive the y truncation.
  const unsigned t_cap = 2 * order_n;

  const Bi one = Bi::constant(orders, 1);
  const Bi y = Bi::variable(orders, 0);
  const Bi w = Bi::variable(orders, 1);
  const Bi wy = w * y;
  const Bi w2y = w * w * y;

  const Bi denom_inv = inverse(one - w * (one - wy));  // 1 / (1 - w(1 - wy))
  const Bi denom_inv2 = denom_inv * denom_inv;
  const Bi shift_inv = inverse(one + w2y);  // 1 / (1 + w^2 y)

  // First term: prefactor * exp((y/2) (t w / (1 + w^2 y))^2).
  const Bi one_minus_w = one - w;
  const Bi one_minus_wy = one - wy;
  const Bi pref1 = one_minus_w * one_minus_w * one_minus_wy * one_minus_wy * shift_inv * denom_inv2;
  const Bi arg1 = y * w * w * shift_inv * shift_inv * ExactRational(1, 2);

  // Second term: (pref2 + pref3 t^2) * exp(t^2 y / 2).
  const Bi inner = one + y * (one - w * (2 * one - wy));
  const Bi numer2 = 2 * one - w * (y + 2 * one) * inner;
  const Bi pref2 = numer2 * denom_inv2 * wy;
  const Bi pref3 = one_minus_wy * denom_inv * wy * y * y;
  const Bi arg2 = y * ExactRational(1, 2);

  const SeriesInT integrand =
      pref1 * SeriesInT::exp_t_squared(arg1, t_cap) +
      (SeriesInT::from_coefficient(pref2, 0, t_cap) + SeriesInT::from_coefficient(pref3, 2, t_cap)) *
          SeriesInT::exp_t_squared(arg2, t_cap);
  if (!integrand.only_even_powers()) throw InternalError("odd power of t in the integrand");
  return integrand.gamma_integrate();
}

BivariateSeries bubble_gf_inclusion_exclusion(unsigned order_n) {
  require_order(order_n);
  const unsigned max_n = order_n - 1;
  const unsigned vertex_order = 2 * max_n + 1;
  const Quad::Exponents orders{vertex_order, vertex_order, max_n + 1, vertex_order};

  const Quad one = Quad::constant(orders, 1);
  const Quad r = Quad::variable(orders, kR);
  const Quad w = Quad::variable(orders, kW);
  const Quad y = Quad::variable(orders, kY);

  const Quad outside = inverse(one - y * y * matching_gf_at(r * y));
  const Quad bubble = matching_gf_at(w * r * y) - one;
  const Quad marked = outside * outside * bubble;

  Bi out(Exp2{order_n, 2 * order_n});
  for (const auto& [e, c] : marked.terms()) {
    // Odd vertex counts cannot be perfectly matched; they never contribute.
    if (e[kY] % 2 != 0) continue;
    if (e[kR] % 2 != 0) throw InternalError("odd number of unmatched vertices with even vertex count");
    const unsigned q = e[kR] / 2;
    const unsigned j = e[kZ];
    if (j > q) throw InternalError("matching larger than its vertex set");
    ExactRational weight(double_factorial(2 * static_cast<long>(q - j) - 1));
    if (j % 2 != 0) weight = -weight;
    out.add_term({e[kY] / 2, e[kW]}, weight * c);
  }
  return out;
}

BubbleTable bubble_table_from_series(const Bi& s, unsigned n_max) {
  if (n_max >= s.orders()[0] || 2 * n_max >= s.orders()[1]) {
    throw TruncationError("series truncated below n = " + std::to_string(n_max));
  }
  BubbleTable t;
  for (unsigned n = 1; n <= n_max; ++n) {
    std::vector<BigInt> row;
    for (unsigned p = 1; p <= 2 * n; ++p) {
      const ExactRational c = s.coefficient({n, p});
      if (c.get_den() != 1) {
        throw InternalError("non-integer coefficient " + to_string(c) + " at n = " + std::to_string(n) +
                            ", p = " + std::to_string(p));
      }
      row.push_back(c.get_num());
    }
    t.set_row(n, std::move(row));
  }
  return t;
}

std::string dump_series(const Bi& s) {
  std::ostringstream out;
  for (const auto& [e, c] : s.terms()) {
    out << e[0] << ' ' << e[1] << ' ' << c.get_num().get_str() << '/' << c.get_den().get_str() << '\n';
  }
  return out.str();
}

}  // namespace bubbles
