#include "hamcycle/f2.hpp"

#include <bit>
#include <stdexcept>

namespace hamcycle {

bool BitRow::any() const {
  for (auto w : words_)
    if (w) return true;
  return false;
}

std::size_t BitRow::lowest() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  return bits_;
}

void F2Matrix::add_row(BitRow row, std::size_t tag) {
  if (row.size() != cols) throw std::invalid_argument("row length does not match matrix");
  rows.push_back(std::move(row));
  tags.push_back(tag);
}

// Each stored row has its pivot cleared in every row inserted after it, so
// reducing in insertion order never reintroduces an earlier pivot.
bool F2Basis::insert(BitRow row) {
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (row.get(pivots_[k])) row.xor_with(rows_[k]);
  std::size_t p = row.lowest();
  if (p == row.size()) return false;
  pivots_.push_back(p);
  rows_.push_back(std::move(row));
  return true;
}

std::vector<std::size_t> gaussian_eliminate(const F2Matrix& m) {
  F2Basis basis;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    if (basis.rank() == m.cols) break;
    if (basis.insert(m.rows[i])) kept.push_back(m.tags[i]);
  }
  return kept;
}

}  // namespace hamcycle
