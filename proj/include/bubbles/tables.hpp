#pragma once

#include <map>
#include <vector>

#include "bubbles/bigint.hpp"

namespace bubbles {

/// Triangle B(n, p): total number of size-p bubbles over all diagrams with
/// n chords. Row n has 2n entries, entry p-1 holding B(n, p).
class BubbleTable {
 public:
  void set_row(unsigned n, std::vector<BigInt> row);
  bool has_row(unsigned n) const { return rows_.count(n) != 0; }
  const std::vector<BigInt>& row(unsigned n) const;
  /// 1-based p, as in B(n, p).
  const BigInt& at(unsigned n, unsigned p) const;
  unsigned max_n() const { return rows_.empty() ? 0 : rows_.rbegin()->first; }
  const std::map<unsigned, std::vector<BigInt>>& rows() const { return rows_; }

  /// Restriction to rows 1..n_max.
  BubbleTable truncated(unsigned n_max) const;

  friend bool operator==(const BubbleTable&, const BubbleTable&) = default;

 private:
  std::map<unsigned, std::vector<BigInt>> rows_;
};

/// Triangle d(n, s): diagrams with n chords and exactly s short chords.
/// Row n has n + 1 entries indexed by s.
class ShortChordTable {
 public:
  void set_row(unsigned n, std::vector<BigInt> row);
  bool has_row(unsigned n) const { return rows_.count(n) != 0; }
  const std::vector<BigInt>& row(unsigned n) const;
  const BigInt& at(unsigned n, unsigned s) const;
  unsigned max_n() const { return rows_.empty() ? 0 : rows_.rbegin()->first; }
  const std::map<unsigned, std::vector<BigInt>>& rows() const { return rows_; }

  friend bool operator==(const ShortChordTable&, const ShortChordTable&) = default;

 private:
  std::map<unsigned, std::vector<BigInt>> rows_;
};

BigInt row_sum(const BubbleTable& t, unsigned n);
/// Sum over p of p * B(n, p).
BigInt row_first_moment(const BubbleTable& t, unsigned n);

}  // namespace bubbles
