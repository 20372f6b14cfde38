#include "dvint/linalg.hpp"

namespace dvint {

std::vector<std::size_t> QMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t p = row;
    while (p < rows_ && (*this)(p, col) == 0) ++p;
    if (p == rows_) continue;
    if (p != row)
      for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(p, c), (*this)(row, c));
    const BigRational inv = BigRational(1) / (*this)(row, col);
    for (std::size_t c = col; c < cols_; ++c) (*this)(row, c) *= inv;
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || (*this)(r, col) == 0) continue;
      const BigRational f = (*this)(r, col);
      for (std::size_t c = col; c < cols_; ++c) (*this)(r, c) -= f * (*this)(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t QMatrix::rank() const {
  QMatrix m(*this);
  return m.rref().size();
}

std::vector<std::vector<BigRational>> QMatrix::nullspace() const {
  QMatrix m(*this);
  const auto pivots = m.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<BigRational>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<BigRational> v(cols_);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m(i, free);
    basis.push_back(std::move(v));
  }
  return echelon_rows(std::move(basis));
}

std::vector<std::vector<BigRational>> echelon_rows(std::vector<std::vector<BigRational>> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  QMatrix m(rows.size(), n);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rows[r][c];
  const auto pivots = m.rref();
  std::vector<std::vector<BigRational>> out(pivots.size(), std::vector<BigRational>(n));
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) out[r][c] = m(r, c);
  return out;
}

}  // namespace dvint
