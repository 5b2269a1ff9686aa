#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bubbles/closed_forms.hpp"
#include "bubbles/errors.hpp"
#include "bubbles/diagram.hpp"
#include "bubbles/exact_enum.hpp"
#include "bubbles/montecarlo.hpp"

using namespace bubbles;

namespace {

double poisson1(unsigned k) {
  double f = 1.0;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return std::exp(-1.0) / f;
}

const Histogram& hist150() {
  static const Histogram h = sample_histogram(150, 100000, 1, 40);
  return h;
}

// Per-bin mean count with its standard error derived from count_squares.
std::pair<double, double> mean_and_se(const Histogram& h, unsigned k) {
  const double n = static_cast<double>(h.samples);
  const double mean = static_cast<double>(h.counts[k]) / n;
  const double var = static_cast<double>(h.count_squares[k]) / n - mean * mean;
  return {mean, std::sqrt(var / n)};
}

}  // namespace

TEST_CASE("bins are right-closed in exact arithmetic") {
  // n = 11: x = p/10, bins of width 0.05 with 40 bins.
  CHECK(bin_of(1, 11, 40) == 1);   // x = 0.1 is the right edge of bin 1
  CHECK(bin_of(20, 11, 40) == 39);  // x = 2
  CHECK(bin_of(10, 11, 40) == 19);  // x = 1.0
  CHECK(bin_of(1, 151, 40) == 0);
  CHECK(bin_of(300, 151, 40) == 39);
  // With bins = 2n - 2 each bin holds exactly one size.
  for (unsigned p = 1; p <= 8; ++p) CHECK(bin_of(p, 5, 8) == p - 1);
  const auto h = sample_histogram(5, 10, 1, 8);
  for (unsigned k = 0; k < 8; ++k) CHECK(h.sizes_per_bin[k] == 1);
  CHECK(h.bin_edges.front() == 0.0);
  CHECK(h.bin_edges.back() == 2.0);
}

TEST_CASE("histogram is independent of the worker count") {
  const auto one = sample_histogram(30, 10000, 7, 40, 1);
  const auto four = sample_histogram(30, 10000, 7, 40, 4);
  CHECK(one == four);
  CHECK_FALSE(one == sample_histogram(30, 10000, 8, 40, 1));
}

TEST_CASE("histogram tallies match a direct recount") {
  const unsigned n = 25;
  const std::uint64_t samples = 3000;
  const auto h = sample_histogram(n, samples, 11, 40, 3);
  std::uint64_t bubbles_total = 0;
  std::uint64_t full = 0;
  std::uint64_t shorts = 0;
  std::uint64_t size_sum = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto dec = bubbles::bubbles(random_diagram(n, 11, i));
    shorts += dec.short_chord_positions.size();
    for (auto s : dec.bubble_sizes) {
      if (s == 2 * n) {
        ++full;
      } else {
        ++bubbles_total;
        size_sum += s;
      }
    }
  }
  CHECK(h.samples == samples);
  CHECK(h.counted_bubbles() == bubbles_total);
  CHECK(h.excluded_full == full);
  CHECK(h.short_chord_total == shorts);
  CHECK(h.size_sum == size_sum);
  std::uint64_t diagrams = 0;
  for (const auto& [k, c] : h.short_chord_counts) diagrams += c;
  CHECK(diagrams == samples);
  CHECK(h.short_chord_counts.at(0) == full);
}

TEST_CASE("sampled bubble counts agree with the exact triangle at n = 4 and n = 6") {
  for (unsigned n : {4u, 6u}) {
    const auto exact = bubble_table_bruteforce(n);
    const double total = diagram_count(n).get_d();
    const auto h = sample_histogram(n, 200000, 3, 2 * n - 2);
    for (unsigned p = 1; p <= 2 * n - 2; ++p) {
      const auto [mean, se] = mean_and_se(h, p - 1);
      const double expect = exact.at(n, p).get_d() / total;
      INFO("n = " << n << ", p = " << p);
      CHECK(std::abs(mean - expect) <= 4 * se + 1e-12);
    }
    const double q = exact.at(n, 2 * n).get_d() / total;
    const double full = static_cast<double>(h.excluded_full) / h.samples;
    CHECK(std::abs(full - q) <= 4 * std::sqrt(q * (1 - q) / h.samples));
  }
}

TEST_CASE("short-chord counts are close to Poisson(1) at n = 150") {
  const auto& h = hist150();
  for (unsigned k = 0; k <= 6; ++k) {
    const double p = poisson1(k);
    const auto it = h.short_chord_counts.find(k);
    const double got = it == h.short_chord_counts.end() ? 0.0 : static_cast<double>(it->second) / h.samples;
    INFO("k = " << k);
    CHECK(std::abs(got - p) <= 4 * std::sqrt(p * (1 - p) / h.samples) + 1e-4);
  }
}

TEST_CASE("density summary at n = 150") {
  const auto c = compare_to_density(hist150());
  CHECK(c.n == 150);
  REQUIRE(c.bins.size() == 40);
  CHECK(std::abs(c.short_chord_free_fraction - std::exp(-1.0)) < 0.005);
  CHECK(std::abs(c.mean_short_chords - 1.0) < 0.01);
  CHECK(c.nested_short_chord_fraction < 0.02);
  CHECK(std::abs(c.trimmed_mean - c.trimmed_mean_target) / c.trimmed_mean_target < 0.01);
  CHECK(std::abs(c.bins[0].density - 0.92) < 0.03);
  CHECK(c.bins[0].x_mid == doctest::Approx(0.025));
  CHECK(c.bins[39].rho == doctest::Approx(rho(1.975)));
  // Densities integrate to one over (0, 2].
  double mass = 0.0;
  for (const auto& b : c.bins) mass += b.density * 0.05;
  CHECK(mass == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("density output formats") {
  const auto c = compare_to_density(sample_histogram(10, 500, 2, 4));
  std::ostringstream csv;
  write_density_csv(csv, c);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  CHECK(line == "x_mid,density,rho,residual");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 3);
  }
  CHECK(rows == 4);
  CHECK(csv.str().find("\n0.250000,") != std::string::npos);

  std::ostringstream plot;
  write_plot_data(plot, c);
  CHECK(plot.str().rfind("0.250000 ", 0) == 0);
}

TEST_CASE("sampler guards") {
  CHECK_THROWS_AS(sample_histogram(2, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_histogram(5, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_histogram(5, 10, 1, 0), std::invalid_argument);
  Histogram empty;
  CHECK_THROWS_AS(compare_to_density(empty), DomainError);
}
