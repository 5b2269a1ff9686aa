#include "bubbles/exact_enum.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <thread>

namespace bubbles {

namespace {

struct PartialCounts {
  std::vector<std::uint64_t> bubble_sizes;
  std::vector<std::uint64_t> short_chords;
};

PartialCounts count_partition(unsigned n, Vertex first_partner, EnumerationLimit limit) {
  PartialCounts c{std::vector<std::uint64_t>(2 * std::size_t{n} + 1, 0),
                  std::vector<std::uint64_t>(std::size_t{n} + 1, 0)};
  DiagramEnumerator e(n, first_partner, limit);
  while (e.next()) {
    const std::size_t shorts =
        for_each_bubble(e.current().pairing(), [&](std::size_t size) { ++c.bubble_sizes[size]; });
    ++c.short_chords[shorts];
  }
  return c;
}

unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

BruteForceTables bruteforce_tables(unsigned n_max, unsigned threads, EnumerationLimit limit) {
  if (n_max == 0) throw std::invalid_argument("bruteforce_tables requires n_max >= 1");
  check_enumeration_limit(n_max, limit);

  BruteForceTables out;
  for (unsigned n = 1; n <= n_max; ++n) {
    // uint64 is ample: entries are bounded by 2n * (2n-1)!! for n within any sane limit.
    std::vector<std::uint64_t> sizes(2 * std::size_t{n} + 1, 0);
    std::vector<std::uint64_t> shorts(std::size_t{n} + 1, 0);
    std::mutex merge_mutex;
    std::atomic<Vertex> next_task{1};
    const Vertex last_task = 2 * n - 1;

    auto worker = [&] {
      for (Vertex task = next_task++; task <= last_task; task = next_task++) {
        PartialCounts c = count_partition(n, task, limit);
        std::lock_guard lock(merge_mutex);
        for (std::size_t i = 0; i < sizes.size(); ++i) sizes[i] += c.bubble_sizes[i];
        for (std::size_t i = 0; i < shorts.size(); ++i) shorts[i] += c.short_chords[i];
      }
    };
    const unsigned workers = std::min<unsigned>(resolve_threads(threads), last_task);
    if (workers <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    std::vector<BigInt> brow(2 * std::size_t{n});
    for (std::size_t p = 1; p <= 2 * std::size_t{n}; ++p) {
      brow[p - 1] = BigInt(static_cast<unsigned long>(sizes[p]));
    }
    std::vector<BigInt> srow(std::size_t{n} + 1);
    for (std::size_t s = 0; s <= n; ++s) srow[s] = BigInt(static_cast<unsigned long>(shorts[s]));
    out.bubbles.set_row(n, std::move(brow));
    out.short_chords.set_row(n, std::move(srow));
  }
  return out;
}

BubbleTable bubble_table_bruteforce(unsigned n_max, unsigned threads, EnumerationLimit limit) {
  return bruteforce_tables(n_max, threads, limit).bubbles;
}

ShortChordTable short_chord_table_bruteforce(unsigned n_max, unsigned threads, EnumerationLimit limit) {
  return bruteforce_tables(n_max, threads, limit).short_chords;
}

std::vector<RelationCheck> check_boundary_relations(const BubbleTable& t, const ShortChordTable& s) {
  std::vector<RelationCheck> out;
  auto record = [&](std::string name, unsigned n, BigInt lhs, BigInt rhs) {
    const bool pass = lhs == rhs;
    out.push_back({std::move(name), n, std::move(lhs), std::move(rhs), pass});
  };
  for (const auto& [n, row] : t.rows()) {
    record("B(n,2n)=d(n,0)", n, t.at(n, 2 * n), s.at(n, 0));
    record("B(n,2n-1)=0", n, t.at(n, 2 * n - 1), BigInt(0));
    if (n >= 2) {
      record("B(n,2n-2)=2B(n-1,2n-2)", n, t.at(n, 2 * n - 2), 2 * t.at(n - 1, 2 * n - 2));
    }
    if (n >= 3) {
      BigInt rhs = 2 * (BigInt(2 * n - 3) * t.at(n - 2, 2 * n - 4) + s.at(n - 2, 1));
      record("B(n,2n-3)=2((2n-3)B(n-2,2n-4)+d(n-2,1))", n, t.at(n, 2 * n - 3), std::move(rhs));
    }
  }
  return out;
}

}  // namespace bubbles
