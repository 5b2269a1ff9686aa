#include <doctest.h>

#include <random>

#include "bubbles/exact_enum.hpp"
#include "bubbles/series.hpp"

using namespace bubbles;

namespace {

using Bi = BivariateSeries;
const Bi::Exponents kOrders{6, 5};

Bi random_series(std::mt19937& rng, bool with_constant) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  Bi s(kOrders);
  for (unsigned i = 0; i < kOrders[0]; ++i) {
    for (unsigned j = 0; j < kOrders[1]; ++j) {
      if (rng() % 3 == 0) s.add_term({i, j}, make_rational(coef(rng), den(rng)));
    }
  }
  if (with_constant) {
    s.add_term({0, 0}, ExactRational(1) - s.constant_term() + ExactRational(den(rng)));
  } else {
    s.add_term({0, 0}, -s.constant_term());
  }
  return s;
}

// Independent count of j-edge matchings on the path with m vertices.
std::vector<BigInt> dp_matchings(unsigned m) {
  // f[i][j]: matchings with j edges on the first i vertices.
  std::vector<std::vector<BigInt>> f(m + 1, std::vector<BigInt>(m / 2 + 1, 0));
  f[0][0] = 1;
  for (unsigned i = 1; i <= m; ++i) {
    for (unsigned j = 0; j <= m / 2; ++j) {
      f[i][j] = f[i - 1][j];
      if (i >= 2 && j >= 1) f[i][j] += f[i - 2][j - 1];
    }
  }
  return f[m];
}

const Bi& closed11() {
  static const Bi s = bubble_gf_closed_form(11);
  return s;
}

const Bi& incexc11() {
  static const Bi s = bubble_gf_inclusion_exclusion(11);
  return s;
}

const std::vector<std::vector<long>> kTable1 = {
    {0, 0},
    {2, 0, 0, 1},
    {8, 4, 2, 2, 0, 5},
    {42, 30, 20, 15, 12, 10, 0, 36},
    {300, 240, 186, 147, 120, 99, 82, 72, 0, 329},
    {2730, 2310, 1920, 1605, 1356, 1155, 988, 848, 730, 658, 0, 3655},
};

}  // namespace

TEST_CASE("geometric series and trivial exp") {
  const Bi one = Bi::constant(kOrders, 1);
  const Bi y = Bi::variable(kOrders, 0);
  const Bi g = inverse(one - y);
  CHECK(g.terms().size() == kOrders[0]);
  for (unsigned k = 0; k < kOrders[0]; ++k) CHECK(g.coefficient({k, 0}) == 1);
  CHECK(exp(Bi(kOrders)) == one);
  CHECK_THROWS_AS(inverse(y), DomainError);
  CHECK_THROWS_AS(exp(one + y), DomainError);
  CHECK_THROWS_AS(g.coefficient({kOrders[0], 0}), TruncationError);
  CHECK_THROWS_AS(one + Bi::constant({3, 3}, 1), std::invalid_argument);
}

TEST_CASE("truncation drops terms at or beyond the orders") {
  const Bi y = Bi::variable(kOrders, 0);
  CHECK(pow(y, kOrders[0]).is_zero());
  CHECK(pow(y, kOrders[0] - 1).coefficient({kOrders[0] - 1, 0}) == 1);
  Bi s(kOrders);
  s.add_term({9, 0}, 3);
  CHECK(s.is_zero());
}

TEST_CASE("ring laws on random truncated series") {
  std::mt19937 rng(2024);
  const Bi one = Bi::constant(kOrders, 1);
  for (int trial = 0; trial < 25; ++trial) {
    const Bi a = random_series(rng, true);
    const Bi b = random_series(rng, false);
    const Bi c = random_series(rng, true);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a * inverse(a) == one);
    CHECK(exp(b) * exp(-b) == one);
    const Bi b2 = random_series(rng, false);
    CHECK(exp(b + b2) == exp(b) * exp(b2));
  }
}

TEST_CASE("matching polynomial generating function") {
  const Bi gf = matching_generating_function(5, 3);
  CHECK(gf.coefficient({4, 0}) == 1);
  CHECK(gf.coefficient({4, 1}) == 3);
  CHECK(gf.coefficient({4, 2}) == 1);

  CHECK(path_matching_numbers(4).rho == std::vector<BigInt>{1, 3, 1});
  CHECK(path_matching_numbers(2).rho == std::vector<BigInt>{1, 1});
  CHECK(path_matching_numbers(6).rho == std::vector<BigInt>{1, 5, 6, 1});
  CHECK(path_matching_numbers(0).rho == std::vector<BigInt>{1});
  for (unsigned m = 0; m <= 20; ++m) {
    const auto pm = path_matching_numbers(m);
    CHECK(pm.rho[0] == 1);
    CHECK(pm.rho == dp_matchings(m));
    for (unsigned j = 0; j < pm.rho.size(); ++j) CHECK(pm.rho[j] == binomial(m - j, j));
  }
}

TEST_CASE("d(n,0) by inclusion-exclusion") {
  CHECK(dn0_by_inclusion_exclusion(0) == 1);
  CHECK(dn0_by_inclusion_exclusion(1) == 0);
  CHECK(dn0_by_inclusion_exclusion(2) == 1);
  CHECK(dn0_by_inclusion_exclusion(3) == 15 - 15 + 6 - 1);
  CHECK(dn0_by_inclusion_exclusion(6) == 3655);
  const auto brute = bruteforce_tables(8, 0, EnumerationLimit{8});
  for (unsigned n = 1; n <= 8; ++n) CHECK(dn0_by_inclusion_exclusion(n) == brute.short_chords.at(n, 0));
  for (unsigned n = 1; n <= 10; ++n) CHECK(incexc11().coefficient({n, 2 * n}) == dn0_by_inclusion_exclusion(n));
}

TEST_CASE("closed-form expansion spot values") {
  const Bi s = bubble_gf_closed_form(6);
  CHECK(s.coefficient({2, 4}) == 1);
  CHECK(s.coefficient({2, 1}) == 2);
  for (unsigned n = 1; n <= 10; ++n) CHECK(closed11().coefficient({n, 2 * n - 1}) == 0);
  const auto row5 = bubble_table_from_series(s, 5).row(5);
  CHECK(row5 == std::vector<BigInt>{300, 240, 186, 147, 120, 99, 82, 72, 0, 329});
}

TEST_CASE("only 1 <= p <= 2n is populated, plus the empty diagram") {
  for (const auto* s : {&closed11(), &incexc11()}) {
    for (const auto& [e, c] : s->terms()) {
      const bool empty_diagram = e[0] == 0 && e[1] == 0;
      CHECK((empty_diagram || (e[1] >= 1 && e[1] <= 2 * e[0])));
      CHECK(c.get_den() == 1);
    }
  }
  CHECK(closed11().coefficient({0, 0}) == 1);
  CHECK(incexc11().coefficient({0, 0}) == 0);
}

TEST_CASE("both generating-function routes reproduce the reference rows") {
  const auto closed = bubble_table_from_series(closed11(), 6);
  const auto incexc = bubble_table_from_series(incexc11(), 6);
  for (unsigned n = 1; n <= 6; ++n) {
    const std::vector<BigInt> expect(kTable1[n - 1].begin(), kTable1[n - 1].end());
    CHECK(closed.row(n) == expect);
    CHECK(incexc.row(n) == expect);
  }
}

TEST_CASE("routes agree: series vs series n <= 10, series vs brute n <= 8") {
  Bi with_empty = incexc11();
  with_empty.add_term({0, 0}, 1);
  CHECK(with_empty == closed11());
  const auto brute = bubble_table_bruteforce(8, 0, EnumerationLimit{8});
  CHECK(bubble_table_from_series(closed11(), 8) == brute);
  CHECK(bubble_table_from_series(incexc11(), 8) == brute);
}

TEST_CASE("w = 1 and d/dw at w = 1 give the total and first-moment closed forms") {
  for (unsigned n = 2; n <= 10; ++n) {
    ExactRational at_one = 0;
    ExactRational slope = 0;
    for (unsigned p = 0; p < 2 * 11; ++p) {
      const ExactRational c = closed11().coefficient({n, p});
      at_one += c;
      slope += c * p;
    }
    const BigInt pow_n1 = BigInt(1) << (n - 1);
    CHECK(at_one == make_rational(factorial(2 * n - 2) * (4 * n - 5), pow_n1 * factorial(n - 1)));
    CHECK(slope == make_rational(factorial(2 * n - 1), (pow_n1 / 2) * factorial(n - 2)));
  }
}

TEST_CASE("termwise Gamma integration of exp(t^2 y / 2)") {
  const Bi::Exponents orders{8, 1};
  const Bi half_y = Bi::variable(orders, 0) * ExactRational(1, 2);
  const auto e = SeriesInT::exp_t_squared(half_y, 16);
  CHECK(e.only_even_powers());
  const Bi integrated = e.gamma_integrate();
  for (unsigned m = 0; m < 8; ++m) CHECK(integrated.coefficient({m, 0}) == double_factorial(2 * static_cast<long>(m) - 1));
  CHECK_THROWS_AS(e.coefficient(17), TruncationError);
}

TEST_CASE("table extraction errors") {
  const Bi s = bubble_gf_closed_form(5);
  CHECK_THROWS_AS(bubble_table_from_series(s, 5), TruncationError);
  CHECK_NOTHROW(bubble_table_from_series(s, 4));
  Bi frac({3, 6});
  frac.add_term({1, 1}, ExactRational(1, 2));
  CHECK_THROWS_AS(bubble_table_from_series(frac, 2), InternalError);
  CHECK_THROWS_AS(bubble_gf_closed_form(0), std::invalid_argument);
  CHECK_THROWS_AS(bubble_gf_inclusion_exclusion(0), std::invalid_argument);
}

TEST_CASE("series dump format") {
  CHECK(dump_series(bubble_gf_closed_form(3)) == "0 0 1/1\n2 1 2/1\n2 4 1/1\n");
  Bi s({2, 2});
  s.add_term({1, 0}, ExactRational(-3, 4));
  s.add_term({0, 1}, ExactRational(5));
  CHECK(dump_series(s) == "0 1 5/1\n1 0 -3/4\n");
}
