#pragma once

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

#include "gaborlab/rational.hpp"

namespace gaborlab {

// Small dense row-major matrix for exact arithmetic. Sizes here never exceed
// 6x6, so nothing clever is done about storage.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::initializer_list<T> values)
      : rows_(rows), cols_(cols), data_(values) {
    assert(data_.size() == rows * cols);
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
  // column[dst] += factor * column[src]
  void add_column(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += factor * (*this)(r, src);
  }
  // row[dst] += factor * row[src]
  void add_row(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += factor * (*this)(src, c);
  }
  void negate_column(std::size_t c) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
  }
  void negate_row(std::size_t r) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    assert(a.cols_ == v.size());
    std::vector<T> out(a.rows_, T(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  friend Matrix operator-(const Matrix& m) {
    Matrix out = m;
    for (auto& x : out.data_) x = -x;
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RationalMatrix = Matrix<Scalar>;
using IntMatrix = Matrix<BigInt>;

Scalar determinant(const RationalMatrix& m);
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

RationalMatrix to_rational(const IntMatrix& m);
// Present iff every entry is an integer.
std::optional<IntMatrix> to_integer(const RationalMatrix& m);

// Least common multiple of all entry denominators.
BigInt common_denominator(const RationalMatrix& m);

RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace gaborlab
