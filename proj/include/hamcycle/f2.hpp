#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hamcycle {

/// Dense bit row over F2, packed 64 columns per word.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }
  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value)
      words_[i / 64] |= mask;
    else
      words_[i / 64] &= ~mask;
  }
  void xor_with(const BitRow& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  }
  bool any() const;
  /// Index of the lowest set bit, or size() when the row is zero.
  std::size_t lowest() const;

  const std::vector<std::uint64_t>& words() const { return words_; }
  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct F2Matrix {
  std::size_t cols = 0;
  std::vector<BitRow> rows;
  std::vector<std::size_t> tags;  // caller-defined id per row

  explicit F2Matrix(std::size_t columns = 0) : cols(columns) {}
  /// Appends a row; throws std::invalid_argument on a length mismatch.
  void add_row(BitRow row, std::size_t tag);
};

/// Selects a maximal independent subset of rows, scanning rows in order and
/// keeping each row that is not spanned by the rows kept before it.
/// Returns the tags of the kept rows in input order.
std::vector<std::size_t> gaussian_eliminate(const F2Matrix& m);

/// Incremental variant of the same elimination: feed rows one at a time.
class F2Basis {
 public:
  /// Returns true and stores the row if it is independent of the stored rows.
  bool insert(BitRow row);
  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<BitRow> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace hamcycle
