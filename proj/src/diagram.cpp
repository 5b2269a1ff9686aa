#include "bubbles/diagram.hpp"

#include <charconv>
#include <random>
#include <string>

namespace bubbles {

namespace {

// SplitMix64 finalizer; decorrelates nearby (seed, index) pairs.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Uniform integer in [0, bound) without the implementation-defined
// behaviour of std::uniform_int_distribution, so samples replay across
// standard libraries.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = engine();
    if (r >= threshold) return r % bound;
  }
}

}  // namespace

ChordDiagram::ChordDiagram(std::vector<Vertex> pairing) : pairing_(std::move(pairing)) {
  const std::size_t len = pairing_.size();
  if (len % 2 != 0) throw std::invalid_argument("chord diagram needs an even number of vertices");
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex p = pairing_[i];
    if (p >= len) throw std::invalid_argument("partner index out of range at vertex " + std::to_string(i));
    if (p == i) throw std::invalid_argument("fixed point at vertex " + std::to_string(i));
    if (pairing_[p] != i) throw std::invalid_argument("pairing is not an involution at vertex " + std::to_string(i));
  }
}

ChordDiagram ChordDiagram::from_chords(std::span<const std::pair<Vertex, Vertex>> chords) {
  const std::size_t len = 2 * chords.size();
  std::vector<Vertex> pairing(len, static_cast<Vertex>(len));
  for (auto [a, b] : chords) {
    if (a >= len || b >= len || pairing[a] != len || pairing[b] != len || a == b) {
      throw std::invalid_argument("chords do not form a perfect matching");
    }
    pairing[a] = b;
    pairing[b] = a;
  }
  return ChordDiagram(std::move(pairing));
}

ChordDiagram ChordDiagram::parse(std::string_view text) {
  std::vector<Vertex> pairing;
  if (text.empty()) return ChordDiagram{};
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view field = text.substr(pos, comma - pos);
    Vertex v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
      throw ParseError("bad partner index '" + std::string(field) + "'");
    }
    pairing.push_back(v);
    pos = comma + 1;
  }
  try {
    return ChordDiagram(std::move(pairing));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::vector<std::pair<Vertex, Vertex>> ChordDiagram::chords() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(chord_count());
  for (Vertex i = 0; i < pairing_.size(); ++i) {
    if (i < pairing_[i]) out.emplace_back(i, pairing_[i]);
  }
  return out;
}

std::string ChordDiagram::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < pairing_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(pairing_[i]);
  }
  return out;
}

std::vector<Vertex> short_chords(const ChordDiagram& d) {
  std::vector<Vertex> out;
  const auto p = d.pairing();
  for (Vertex i = 0; i + 1 < p.size(); ++i) {
    if (p[i] == i + 1) out.push_back(i);
  }
  return out;
}

std::size_t short_chord_count(const ChordDiagram& d) {
  std::size_t count = 0;
  const auto p = d.pairing();
  for (Vertex i = 0; i + 1 < p.size(); ++i) count += (p[i] == i + 1);
  return count;
}

BubbleDecomposition bubbles(const ChordDiagram& d) {
  BubbleDecomposition out;
  for_each_bubble(d.pairing(), [&](std::size_t size) { out.bubble_sizes.push_back(size); });
  out.short_chord_positions = short_chords(d);
  return out;
}

void check_enumeration_limit(unsigned n, EnumerationLimit limit) {
  if (n > limit.max_n) {
    throw ResourceLimitError("enumeration of n = " + std::to_string(n) +
                             " chords exceeds the limit n <= " + std::to_string(limit.max_n));
  }
}

DiagramEnumerator::DiagramEnumerator(unsigned n, EnumerationLimit limit)
    : n_(n),
      diagram_(ChordDiagram::Unchecked{}, std::vector<Vertex>(2 * std::size_t{n})),
      next_(2 * std::size_t{n} + 1),
      prev_(2 * std::size_t{n} + 1),
      left_(n),
      right_(n) {
  check_enumeration_limit(n, limit);
  const Vertex sentinel = 2 * n;
  for (Vertex v = 0; v <= sentinel; ++v) {
    next_[v] = v == sentinel ? 0 : v + 1;
    prev_[v] = v == 0 ? sentinel : v - 1;
  }
  if (n == 0) {
    next_[sentinel] = prev_[sentinel] = sentinel;
  }
}

DiagramEnumerator::DiagramEnumerator(unsigned n, Vertex first_partner, EnumerationLimit limit)
    : DiagramEnumerator(n, limit) {
  if (n == 0 || first_partner == 0 || first_partner >= 2 * n) {
    throw std::invalid_argument("first partner must lie in 1..2n-1");
  }
  fixed_first_ = true;
  right_[0] = first_partner;
}

bool DiagramEnumerator::descend(std::size_t level) {
  const Vertex sentinel = 2 * n_;
  auto& p = diagram_.pairing_;
  for (std::size_t l = level; l < n_; ++l) {
    const Vertex i = next_[sentinel];
    next_[prev_[i]] = next_[i];
    prev_[next_[i]] = prev_[i];
    const Vertex j = (l == 0 && fixed_first_) ? right_[0] : next_[i];
    next_[prev_[j]] = next_[j];
    prev_[next_[j]] = prev_[j];
    left_[l] = i;
    right_[l] = j;
    p[i] = j;
    p[j] = i;
  }
  return true;
}

bool DiagramEnumerator::advance_from(std::size_t level) {
  const Vertex sentinel = 2 * n_;
  const std::size_t min_level = fixed_first_ ? 1 : 0;
  auto& p = diagram_.pairing_;
  for (std::size_t l = level + 1; l-- > min_level;) {
    const Vertex i = left_[l];
    const Vertex j = right_[l];
    prev_[next_[j]] = j;
    next_[prev_[j]] = j;
    const Vertex nj = next_[j];
    if (nj != sentinel) {
      next_[prev_[nj]] = next_[nj];
      prev_[next_[nj]] = prev_[nj];
      right_[l] = nj;
      p[i] = nj;
      p[nj] = i;
      return descend(l + 1);
    }
    prev_[next_[i]] = i;
    next_[prev_[i]] = i;
  }
  return false;
}

bool DiagramEnumerator::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    return descend(0);
  }
  if (n_ == 0 || !advance_from(n_ - 1)) {
    done_ = true;
    return false;
  }
  return true;
}

std::vector<ChordDiagram> enumerate_diagrams(unsigned n, EnumerationLimit limit) {
  std::vector<ChordDiagram> out;
  for_each_diagram(n, [&](const ChordDiagram& d) { out.push_back(d); }, limit);
  return out;
}

ChordDiagram random_diagram(unsigned n, std::uint64_t seed, std::uint64_t index) {
  if (n == 0) throw std::invalid_argument("random_diagram requires n >= 1");
  std::mt19937_64 engine(mix64(mix64(seed) ^ index));

  const std::size_t len = 2 * std::size_t{n};
  std::vector<Vertex> pairing(len, static_cast<Vertex>(len));
  // Unordered pool of unpaired vertices with position lookup for O(1) removal.
  std::vector<Vertex> pool(len);
  std::vector<std::size_t> where(len);
  for (Vertex v = 0; v < len; ++v) pool[v] = where[v] = v;
  auto take = [&](std::size_t slot) {
    const Vertex v = pool[slot];
    const Vertex last = pool.back();
    pool[slot] = last;
    where[last] = slot;
    pool.pop_back();
    return v;
  };
  for (Vertex i = 0; i < len; ++i) {
    if (pairing[i] != len) continue;
    take(where[i]);
    const Vertex j = take(uniform_below(engine, pool.size()));
    pairing[i] = j;
    pairing[j] = i;
  }
  return ChordDiagram(ChordDiagram::Unchecked{}, std::move(pairing));
}

}  // namespace bubbles
