#include "gaborlab/smith.hpp"

#include <tuple>

namespace gaborlab {
namespace {

using boost::multiprecision::abs;

// s*a + t*b == g, g >= 0
std::tuple<BigInt, BigInt, BigInt> extended_gcd(const BigInt& a, const BigInt& b) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    std::tie(old_r, r) = std::make_tuple(r, BigInt(old_r - q * r));
    std::tie(old_s, s) = std::make_tuple(s, BigInt(old_s - q * s));
    std::tie(old_t, t) = std::make_tuple(t, BigInt(old_t - q * t));
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// Replaces columns p, j of both matrices by the unimodular combination that
// puts gcd(a(row,p), a(row,j)) in column p and zero in column j.
void combine_columns(IntMatrix& a, IntMatrix& u, std::size_t row, std::size_t p, std::size_t j) {
  const BigInt x = a(row, p);
  const BigInt y = a(row, j);
  auto [g, s, t] = extended_gcd(x, y);
  const BigInt xg = x / g;
  const BigInt yg = y / g;
  for (IntMatrix* m : {&a, &u}) {
    for (std::size_t r = 0; r < m->rows(); ++r) {
      BigInt cp = (*m)(r, p);
      BigInt cj = (*m)(r, j);
      (*m)(r, p) = s * cp + t * cj;
      (*m)(r, j) = -yg * cp + xg * cj;
    }
  }
}

}  // namespace

ColumnHermite column_hermite(const IntMatrix& m) {
  ColumnHermite out{m, IntMatrix::identity(m.cols()), 0};
  IntMatrix& a = out.reduced;
  IntMatrix& u = out.transform;
  std::size_t pivot = 0;
  for (std::size_t row = 0; row < a.rows() && pivot < a.cols(); ++row) {
    for (std::size_t j = pivot + 1; j < a.cols(); ++j) {
      if (a(row, j) != 0) combine_columns(a, u, row, pivot, j);
    }
    if (a(row, pivot) == 0) continue;
    if (a(row, pivot) < 0) {
      a.negate_column(pivot);
      u.negate_column(pivot);
    }
    for (std::size_t j = 0; j < pivot; ++j) {
      BigInt q = floor_div(a(row, j), a(row, pivot));
      if (q == 0) continue;
      a.add_column(j, pivot, BigInt(-q));
      u.add_column(j, pivot, BigInt(-q));
    }
    ++pivot;
  }
  out.rank = pivot;
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  ColumnHermite h = column_hermite(m);
  IntMatrix kernel(m.cols(), m.cols() - h.rank);
  for (std::size_t r = 0; r < m.cols(); ++r)
    for (std::size_t c = h.rank; c < m.cols(); ++c) kernel(r, c - h.rank) = h.transform(r, c);
  return kernel;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm out{IntMatrix::identity(m.rows()), m, IntMatrix::identity(m.cols())};
  IntMatrix& a = out.diagonal;
  IntMatrix& left = out.left;
  IntMatrix& right = out.right;
  const std::size_t n = std::min(a.rows(), a.cols());

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j) {
          if (a(i, j) == 0) continue;
          if (!found || abs(a(i, j)) < abs(a(pi, pj))) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) return out;
      if (pi != t) {
        a.swap_rows(pi, t);
        left.swap_rows(pi, t);
      }
      if (pj != t) {
        a.swap_columns(pj, t);
        right.swap_columns(pj, t);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        BigInt q = a(i, t) / a(t, t);
        a.add_row(i, t, BigInt(-q));
        left.add_row(i, t, BigInt(-q));
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        BigInt q = a(t, j) / a(t, t);
        a.add_column(j, t, BigInt(-q));
        right.add_column(j, t, BigInt(-q));
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < a.rows() && divides; ++i)
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (a(i, j) % a(t, t) != 0) {
            a.add_row(t, i, BigInt(1));
            left.add_row(t, i, BigInt(1));
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      left.negate_row(t);
    }
  }
  return out;
}

RationalMatrix canonical_basis(const RationalMatrix& generator) {
  const BigInt den = common_denominator(generator);
  RationalMatrix scaled = generator;
  for (std::size_t r = 0; r < scaled.rows(); ++r)
    for (std::size_t c = 0; c < scaled.cols(); ++c) scaled(r, c) *= Scalar(den);
  IntMatrix integral = *to_integer(scaled);
  ColumnHermite h = column_hermite(integral);
  RationalMatrix out = to_rational(h.reduced);
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) /= Scalar(den);
  return out;
}

}  // namespace gaborlab
