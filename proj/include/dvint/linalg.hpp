#pragma once

#include <cstddef>
#include <vector>

#include "dvint/polynomial.hpp"

namespace dvint {

/// Dense matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigRational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const BigRational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Basis of the right nullspace, rows in reduced echelon form with leading 1.
  std::vector<std::vector<BigRational>> nullspace() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigRational> data_;
};

/// Reduced echelon form of a list of row vectors; zero rows dropped.
std::vector<std::vector<BigRational>> echelon_rows(std::vector<std::vector<BigRational>> rows);

}  // namespace dvint
