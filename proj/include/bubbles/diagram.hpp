#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bubbles/errors.hpp"

namespace bubbles {

using Vertex = std::uint32_t;

/// A linear chord diagram on 2n vertices, stored as the partner of each
/// 0-based position along the line.
class ChordDiagram {
 public:
  ChordDiagram() = default;

  /// Validates involution, no fixed points and even length.
  explicit ChordDiagram(std::vector<Vertex> pairing);

  /// Builds a diagram from its chords; every vertex 0..2n-1 must appear once.
  static ChordDiagram from_chords(std::span<const std::pair<Vertex, Vertex>> chords);

  /// Parses the comma-separated partner list, e.g. "1,0,3,2".
  static ChordDiagram parse(std::string_view text);

  std::size_t chord_count() const { return pairing_.size() / 2; }
  std::size_t vertex_count() const { return pairing_.size(); }
  Vertex partner(Vertex i) const { return pairing_[i]; }
  std::span<const Vertex> pairing() const { return pairing_; }

  /// Chords as (left, right) pairs ordered by left endpoint.
  std::vector<std::pair<Vertex, Vertex>> chords() const;

  std::string to_string() const;

  friend bool operator==(const ChordDiagram&, const ChordDiagram&) = default;

 private:
  struct Unchecked {};
  ChordDiagram(Unchecked, std::vector<Vertex> pairing) : pairing_(std::move(pairing)) {}

  std::vector<Vertex> pairing_;

  friend class DiagramEnumerator;
  friend ChordDiagram random_diagram(unsigned n, std::uint64_t seed, std::uint64_t index);
};

struct BubbleDecomposition {
  std::vector<std::size_t> bubble_sizes;
  std::vector<Vertex> short_chord_positions;
};

/// Left endpoints i with partner(i) == i + 1, increasing.
std::vector<Vertex> short_chords(const ChordDiagram& d);

std::size_t short_chord_count(const ChordDiagram& d);

/// Calls visit(size) for each maximal nonempty run of vertices not covered
/// by a short chord, left to right. Returns the number of short chords.
template <class Visit>
std::size_t for_each_bubble(std::span<const Vertex> pairing, Visit&& visit) {
  const std::size_t len = pairing.size();
  std::size_t run = 0;
  std::size_t shorts = 0;
  std::size_t i = 0;
  while (i < len) {
    if (pairing[i] == i + 1) {
      if (run > 0) visit(run);
      run = 0;
      ++shorts;
      i += 2;
    } else {
      ++run;
      ++i;
    }
  }
  if (run > 0) visit(run);
  return shorts;
}

BubbleDecomposition bubbles(const ChordDiagram& d);

/// Resource guard for exhaustive enumeration.
struct EnumerationLimit {
  unsigned max_n = 10;
};

void check_enumeration_limit(unsigned n, EnumerationLimit limit);

/// Depth-first enumerator: the lowest unpaired vertex is joined to each larger
/// unpaired vertex in increasing order. Each diagram is produced exactly once.
/// For n = 0 the single empty diagram is produced.
class DiagramEnumerator {
 public:
  explicit DiagramEnumerator(unsigned n, EnumerationLimit limit = {});

  /// Restricts to diagrams in which vertex 0 is joined to `first_partner`.
  DiagramEnumerator(unsigned n, Vertex first_partner, EnumerationLimit limit = {});

  /// Advances to the next diagram; false once the stream is exhausted.
  bool next();

  /// The current diagram; valid after next() returned true.
  const ChordDiagram& current() const { return diagram_; }

 private:
  bool advance_from(std::size_t level);
  bool descend(std::size_t level);

  unsigned n_;
  bool started_ = false;
  bool done_ = false;
  bool fixed_first_ = false;
  ChordDiagram diagram_;
  // Doubly linked list of unpaired vertices with a sentinel at index 2n.
  std::vector<Vertex> next_;
  std::vector<Vertex> prev_;
  // Per level: lowest unpaired vertex and its current partner.
  std::vector<Vertex> left_;
  std::vector<Vertex> right_;
};

/// Streams every diagram on 2n vertices to visit(const ChordDiagram&).
template <class Visit>
void for_each_diagram(unsigned n, Visit&& visit, EnumerationLimit limit = {}) {
  DiagramEnumerator e(n, limit);
  while (e.next()) visit(e.current());
}

/// Materializes the stream; intended for small n.
std::vector<ChordDiagram> enumerate_diagrams(unsigned n, EnumerationLimit limit = {});

/// Uniform sample: the lowest unpaired vertex is joined to a uniformly chosen
/// other unpaired vertex until none remain. Pure function of (seed, index).
ChordDiagram random_diagram(unsigned n, std::uint64_t seed, std::uint64_t index);

}  // namespace bubbles
