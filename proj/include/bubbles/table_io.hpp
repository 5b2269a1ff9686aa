#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bubbles/tables.hpp"

namespace bubbles {

// CSV: header line, then one exact decimal integer per line.
//   bubble table:       "n,p,B"
//   short chord table:  "n,s,d"
void write_csv(std::ostream& out, const BubbleTable& t);
void write_csv(std::ostream& out, const ShortChordTable& t);
BubbleTable read_bubble_table_csv(std::istream& in);
ShortChordTable read_short_chord_table_csv(std::istream& in);

void write_json(std::ostream& out, const BubbleTable& t);
/// Rows as space-separated values, "n: B(n,1) ... B(n,2n)".
void write_plain(std::ostream& out, const BubbleTable& t);

/// One entry of an OEIS b-file ("index value" per line, '#' comments).
struct BFileEntry {
  std::int64_t index = 0;
  BigInt value;
};

std::vector<BFileEntry> parse_bfile(std::istream& in);
std::vector<BFileEntry> read_bfile(const std::filesystem::path& path);
void write_bfile(std::ostream& out, const std::vector<BigInt>& terms, std::int64_t offset);

/// Sequences this toolkit can cross-check, with their OEIS offsets.
enum class OeisSequence {
  A367000,  // B(n,p) read by rows, n >= 1, p = 1..2n; offset 1
  A278990,  // d(n,0), n >= 0; offset 0
  A079267,  // d(n,s) read by rows, n >= 0, s = 0..n; offset 0
};

std::string sequence_name(OeisSequence s);
std::int64_t sequence_offset(OeisSequence s);

/// Terms of the sequence derivable from the given tables, in OEIS order.
/// Row n = 0 (the empty diagram) is supplied where the sequence includes it.
std::vector<BigInt> sequence_terms(OeisSequence s, const BubbleTable& b, const ShortChordTable& d);

struct BFileComparison {
  std::size_t compared = 0;
  std::size_t skipped = 0;  // indices outside the computed range
  std::vector<std::string> mismatches;
  bool pass() const { return compared > 0 && mismatches.empty(); }
};

/// Term k of `expected` corresponds to b-file index k + offset.
BFileComparison compare_bfile(const std::vector<BFileEntry>& entries, const std::vector<BigInt>& expected,
                              std::int64_t offset);

}  // namespace bubbles
