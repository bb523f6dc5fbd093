#pragma once

#include <utility>
#include <vector>

#include "twistkit/rational.hpp"

namespace twistkit {

/// Dense matrix over Q, row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form; pivots are chosen left to right, so callers
/// express column preference through column order.
struct Rref {
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;  // pivot_cols[r] is the pivot of row r
  std::size_t rank() const noexcept { return pivot_cols.size(); }
};

inline Rref rref(QMatrix m) {
  Rref out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    m.swap_rows(piv, row);
    Rational inv = 1 / m.at(row, c);
    for (std::size_t k = c; k < m.cols(); ++k)
      if (m.at(row, k) != 0) m.at(row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, c) == 0) continue;
      Rational f = m.at(r, c);
      for (std::size_t k = c; k < m.cols(); ++k)
        if (m.at(row, k) != 0) m.at(r, k) -= f * m.at(row, k);
    }
    out.pivot_cols.push_back(c);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const QMatrix& m) { return rref(m).rank(); }

}  // namespace twistkit
