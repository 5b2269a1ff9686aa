#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

namespace bubbles {

/// Bubble sizes of uniformly sampled diagrams, binned over x = p/(n-1) in
/// right-closed bins ((k-1) w, k w], w = 2/bins. Whole-diagram bubbles
/// (p = 2n) are tallied separately and never binned.
struct Histogram {
  unsigned n = 0;
  std::uint64_t samples = 0;
  std::vector<double> bin_edges;
  std::vector<std::uint64_t> counts;
  /// Sum over samples of the squared per-sample count, for standard errors.
  std::vector<std::uint64_t> count_squares;
  /// Number of integer sizes p <= 2n-2 falling in each bin.
  std::vector<unsigned> sizes_per_bin;
  std::uint64_t excluded_full = 0;
  /// Number of short chords k -> number of sampled diagrams with k.
  std::map<unsigned, std::uint64_t> short_chord_counts;
  std::uint64_t size_sum = 0;
  std::uint64_t short_chord_total = 0;
  /// Short chords (i, i+1) whose neighbours i-1, i+2 are joined to each other.
  std::uint64_t nested_short_chords = 0;

  unsigned bins() const { return static_cast<unsigned>(counts.size()); }
  std::uint64_t counted_bubbles() const;

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Index of the right-closed bin containing p/(n-1); exact integer arithmetic.
unsigned bin_of(unsigned p, unsigned n, unsigned bins);

/// Draws diagrams random_diagram(n, seed, i) for i in [0, samples), split
/// across `threads` workers (0 = hardware concurrency). The result depends
/// only on (n, samples, seed, bins).
Histogram sample_histogram(unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned bins = 40,
                           unsigned threads = 0);

struct BinComparison {
  double x_mid = 0.0;
  double density = 0.0;
  double rho = 0.0;
  double residual = 0.0;
};

struct DensityComparison {
  unsigned n = 0;
  std::vector<BinComparison> bins;
  double sup_norm = 0.0;
  /// Mean of x = p/(n-1) over binned bubbles.
  double trimmed_mean = 0.0;
  /// asymptotic_trimmed_mean() * n / (n-1), the large-n prediction for trimmed_mean.
  double trimmed_mean_target = 0.0;
  double short_chord_free_fraction = 0.0;
  double mean_short_chords = 0.0;
  double nested_short_chord_fraction = 0.0;
};

/// Normalizes bin counts to a density in x, (n-1) count / (S (2 - 1/e) m) with
/// S the sample count and m the number of sizes in the bin, and compares it
/// against rho at each bin midpoint. Throws DomainError when empty.
DensityComparison compare_to_density(const Histogram& h);

/// Header "x_mid,density,rho,residual".
void write_density_csv(std::ostream& out, const DensityComparison& c);
/// Two whitespace-separated columns "x density" for gnuplot.
void write_plot_data(std::ostream& out, const DensityComparison& c);

}  // namespace bubbles
