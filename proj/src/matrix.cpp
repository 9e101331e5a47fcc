#include "gaborlab/matrix.hpp"

namespace gaborlab {

Scalar determinant(const RationalMatrix& m) {
  assert(m.square());
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Scalar det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      a.swap_rows(pivot, col);
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a(r, col) == 0) continue;
      Scalar factor = a(r, col) / a(col, col);
      a.add_row(r, col, Scalar(-factor));
    }
  }
  return det;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  assert(m.square());
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    a.swap_rows(pivot, col);
    inv.swap_rows(pivot, col);
    Scalar scale = 1 / a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Scalar factor = -a(r, col);
      a.add_row(r, col, factor);
      inv.add_row(r, col, factor);
    }
  }
  return inv;
}

RationalMatrix to_rational(const IntMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Scalar(m(r, c));
  return out;
}

std::optional<IntMatrix> to_integer(const RationalMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!is_integral(m(r, c))) return std::nullopt;
      out(r, c) = boost::multiprecision::numerator(m(r, c));
    }
  return out;
}

BigInt common_denominator(const RationalMatrix& m) {
  BigInt l = 1;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const BigInt& d = boost::multiprecision::denominator(m(r, c));
      l = l / boost::multiprecision::gcd(l, d) * d;
    }
  return l;
}

RationalMatrix block_diagonal(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out(a.rows() + r, a.cols() + c) = b(r, c);
  return out;
}

}  // namespace gaborlab
