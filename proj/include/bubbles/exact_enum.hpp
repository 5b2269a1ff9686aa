#pragma once

#include <string>
#include <vector>

#include "bubbles/diagram.hpp"
#include "bubbles/tables.hpp"

namespace bubbles {

struct BruteForceTables {
  BubbleTable bubbles;
  ShortChordTable short_chords;
};

/// Exhaustive enumeration of every diagram with n = 1..n_max chords,
/// aggregating bubble sizes and short-chord counts. Work is split by the
/// partner of vertex 0; the result does not depend on `threads`
/// (0 = hardware concurrency).
BruteForceTables bruteforce_tables(unsigned n_max, unsigned threads = 0, EnumerationLimit limit = {});

BubbleTable bubble_table_bruteforce(unsigned n_max, unsigned threads = 0, EnumerationLimit limit = {});
ShortChordTable short_chord_table_bruteforce(unsigned n_max, unsigned threads = 0,
                                             EnumerationLimit limit = {});

struct RelationCheck {
  std::string relation;
  unsigned n = 0;
  BigInt lhs;
  BigInt rhs;
  bool pass = false;
};

/// Checks, for every n covered by the bubble table:
///   B(n,2n)   = d(n,0)                                  n >= 1
///   B(n,2n-1) = 0                                       n >= 1
///   B(n,2n-2) = 2 B(n-1,2n-2)                           n >= 2
///   B(n,2n-3) = 2((2n-3) B(n-2,2n-4) + d(n-2,1))        n >= 3
/// Throws std::out_of_range when a required row is missing.
std::vector<RelationCheck> check_boundary_relations(const BubbleTable& t, const ShortChordTable& s);

}  // namespace bubbles
