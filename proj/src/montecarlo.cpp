#include "bubbles/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "bubbles/closed_forms.hpp"
#include "bubbles/diagram.hpp"
#include "bubbles/errors.hpp"

namespace bubbles {

namespace {

constexpr std::uint64_t kChunk = 2048;

Histogram empty_histogram(unsigned n, unsigned bins) {
  Histogram h;
  h.n = n;
  h.counts.assign(bins, 0);
  h.count_squares.assign(bins, 0);
  h.sizes_per_bin.assign(bins, 0);
  for (unsigned k = 0; k <= bins; ++k) h.bin_edges.push_back(2.0 * k / bins);
  for (unsigned p = 1; p <= 2 * n - 2; ++p) ++h.sizes_per_bin[bin_of(p, n, bins)];
  return h;
}

void merge_into(Histogram& into, const Histogram& part) {
  into.samples += part.samples;
  for (unsigned k = 0; k < into.bins(); ++k) {
    into.counts[k] += part.counts[k];
    into.count_squares[k] += part.count_squares[k];
  }
  into.excluded_full += part.excluded_full;
  for (const auto& [k, c] : part.short_chord_counts) into.short_chord_counts[k] += c;
  into.size_sum += part.size_sum;
  into.short_chord_total += part.short_chord_total;
  into.nested_short_chords += part.nested_short_chords;
}

void record_sample(Histogram& h, const ChordDiagram& d, std::vector<unsigned>& scratch) {
  const unsigned n = h.n;
  const unsigned bins = h.bins();
  scratch.clear();
  const std::size_t shorts = for_each_bubble(d.pairing(), [&](std::size_t size) {
    if (size == 2 * std::size_t{n}) {
      ++h.excluded_full;
      return;
    }
    if (size == 2 * std::size_t{n} - 1) throw InternalError("bubble of size 2n-1 observed");
    scratch.push_back(bin_of(static_cast<unsigned>(size), n, bins));
    h.size_sum += size;
  });
  std::sort(scratch.begin(), scratch.end());
  for (std::size_t i = 0; i < scratch.size();) {
    std::size_t j = i;
    while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
    const std::uint64_t c = j - i;
    h.counts[scratch[i]] += c;
    h.count_squares[scratch[i]] += c * c;
    i = j;
  }
  ++h.short_chord_counts[static_cast<unsigned>(shorts)];
  h.short_chord_total += shorts;
  const auto p = d.pairing();
  for (Vertex i = 1; i + 2 < p.size(); ++i) {
    if (p[i] == i + 1 && p[i - 1] == i + 2) ++h.nested_short_chords;
  }
  ++h.samples;
}

}  // namespace

std::uint64_t Histogram::counted_bubbles() const {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

unsigned bin_of(unsigned p, unsigned n, unsigned bins) {
  // Smallest k >= 1 with p/(n-1) <= 2k/bins, minus one.
  const std::uint64_t num = std::uint64_t{p} * bins;
  const std::uint64_t den = 2 * std::uint64_t{n - 1};
  const std::uint64_t k = (num + den - 1) / den;
  return static_cast<unsigned>(std::clamp<std::uint64_t>(k, 1, bins) - 1);
}

Histogram sample_histogram(unsigned n, std::uint64_t samples, std::uint64_t seed, unsigned bins,
                           unsigned threads) {
  if (n < 3) throw std::invalid_argument("sample_histogram requires n >= 3");
  if (samples == 0) throw std::invalid_argument("sample_histogram requires samples >= 1");
  if (bins == 0) throw std::invalid_argument("sample_histogram requires bins >= 1");

  Histogram total = empty_histogram(n, bins);
  std::mutex merge_mutex;
  std::atomic<std::uint64_t> next_chunk{0};
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;

  auto worker = [&] {
    Histogram local = empty_histogram(n, bins);
    std::vector<unsigned> scratch;
    for (std::uint64_t c = next_chunk++; c < chunks; c = next_chunk++) {
      const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) record_sample(local, random_diagram(n, seed, i), scratch);
    }
    std::lock_guard lock(merge_mutex);
    merge_into(total, local);
  };

  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  return total;
}

DensityComparison compare_to_density(const Histogram& h) {
  const std::uint64_t counted = h.counted_bubbles();
  if (h.samples == 0 || counted == 0) throw DomainError("cannot compare an empty histogram");

  DensityComparison c;
  c.n = h.n;
  // Expected binned bubbles per diagram tend to 2 - 1/e.
  const double mass = static_cast<double>(h.samples) * (2.0 - std::exp(-1.0));
  const double scale = static_cast<double>(h.n - 1) / mass;
  for (unsigned k = 0; k < h.bins(); ++k) {
    BinComparison b;
    b.x_mid = 0.5 * (h.bin_edges[k] + h.bin_edges[k + 1]);
    b.rho = rho(b.x_mid);
    if (h.sizes_per_bin[k] > 0) {
      b.density = scale * static_cast<double>(h.counts[k]) / h.sizes_per_bin[k];
      b.residual = b.density - b.rho;
      c.sup_norm = std::max(c.sup_norm, std::abs(b.residual));
    }
    c.bins.push_back(b);
  }
  c.trimmed_mean = static_cast<double>(h.size_sum) / static_cast<double>(counted) / (h.n - 1);
  c.trimmed_mean_target = asymptotic_trimmed_mean() * h.n / (h.n - 1);
  const double samples = static_cast<double>(h.samples);
  c.short_chord_free_fraction = static_cast<double>(h.excluded_full) / samples;
  c.mean_short_chords = static_cast<double>(h.short_chord_total) / samples;
  c.nested_short_chord_fraction =
      h.short_chord_total == 0 ? 0.0
                               : static_cast<double>(h.nested_short_chords) / static_cast<double>(h.short_chord_total);
  return c;
}

void write_density_csv(std::ostream& out, const DensityComparison& c) {
  out << "x_mid,density,rho,residual\n";
  for (const auto& b : c.bins) {
    fmt::print(out, "{:.6f},{:.10f},{:.10f},{:.10f}\n", b.x_mid, b.density, b.rho, b.residual);
  }
}

void write_plot_data(std::ostream& out, const DensityComparison& c) {
  for (const auto& b : c.bins) fmt::print(out, "{:.6f} {:.10f}\n", b.x_mid, b.density);
}

}  // namespace bubbles
