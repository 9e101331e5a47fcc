#pragma once

#include <cstddef>

#include "gaborlab/matrix.hpp"

namespace gaborlab {

// left * input * right == diagonal, with left and right unimodular and the
// diagonal entries nonnegative, each dividing the next.
struct SmithForm {
  IntMatrix left;
  IntMatrix diagonal;
  IntMatrix right;
};

SmithForm smith_normal_form(const IntMatrix& m);

// input * transform == reduced, where reduced is in lower column echelon form
// (column Hermite normal form): the first `rank` columns carry positive
// pivots in strictly increasing rows, entries left of a pivot are reduced into
// [0, pivot), and the remaining columns are zero. transform is unimodular.
struct ColumnHermite {
  IntMatrix reduced;
  IntMatrix transform;
  std::size_t rank = 0;
};

ColumnHermite column_hermite(const IntMatrix& m);

// Columns form a basis of the integer kernel {k in Z^n : m k = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

// Canonical basis of the lattice spanned by the columns of a full-rank
// rational square matrix (column Hermite form, computed after clearing
// denominators).
RationalMatrix canonical_basis(const RationalMatrix& generator);

}  // namespace gaborlab
