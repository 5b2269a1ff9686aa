#include "bubbles/tables.hpp"

#include <stdexcept>
#include <string>

namespace bubbles {

namespace {

template <class Rows>
const std::vector<BigInt>& find_row(const Rows& rows, unsigned n, const char* what) {
  auto it = rows.find(n);
  if (it == rows.end()) {
    throw std::out_of_range(std::string(what) + ": no row for n = " + std::to_string(n));
  }
  return it->second;
}

}  // namespace

void BubbleTable::set_row(unsigned n, std::vector<BigInt> row) {
  if (n == 0 || row.size() != 2 * std::size_t{n}) {
    throw std::invalid_argument("bubble table row n = " + std::to_string(n) + " must have 2n entries");
  }
  rows_[n] = std::move(row);
}

const std::vector<BigInt>& BubbleTable::row(unsigned n) const { return find_row(rows_, n, "bubble table"); }

const BigInt& BubbleTable::at(unsigned n, unsigned p) const {
  const auto& r = row(n);
  if (p == 0 || p > r.size()) {
    throw std::out_of_range("bubble table: p = " + std::to_string(p) + " outside 1..2n for n = " +
                            std::to_string(n));
  }
  return r[p - 1];
}

BubbleTable BubbleTable::truncated(unsigned n_max) const {
  BubbleTable out;
  for (const auto& [n, r] : rows_) {
    if (n <= n_max) out.set_row(n, r);
  }
  return out;
}

void ShortChordTable::set_row(unsigned n, std::vector<BigInt> row) {
  if (row.size() != std::size_t{n} + 1) {
    throw std::invalid_argument("short chord table row n = " + std::to_string(n) + " must have n+1 entries");
  }
  rows_[n] = std::move(row);
}

const std::vector<BigInt>& ShortChordTable::row(unsigned n) const {
  return find_row(rows_, n, "short chord table");
}

const BigInt& ShortChordTable::at(unsigned n, unsigned s) const {
  const auto& r = row(n);
  if (s >= r.size()) {
    throw std::out_of_range("short chord table: s = " + std::to_string(s) + " outside 0..n");
  }
  return r[s];
}

BigInt row_sum(const BubbleTable& t, unsigned n) {
  BigInt sum = 0;
  for (const auto& v : t.row(n)) sum += v;
  return sum;
}

BigInt row_first_moment(const BubbleTable& t, unsigned n) {
  BigInt sum = 0;
  const auto& r = t.row(n);
  for (std::size_t i = 0; i < r.size(); ++i) sum += r[i] * static_cast<unsigned long>(i + 1);
  return sum;
}

}  // namespace bubbles
