#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gaborlab/matrix.hpp"
#include "gaborlab/rational.hpp"

namespace gaborlab {

// Full-rank lattice G Z^{2d} in R^{2d}. Coordinates are ordered
// (x_1, ..., x_d, w_1, ..., w_d): time first, then frequency, so the
// coordinate pair of axis i is (i, d + i).
class Lattice {
 public:
  // Throws OddDimension, DimensionMismatch (non-square) or SingularGenerator.
  explicit Lattice(RationalMatrix generator);

  std::size_t dimension() const { return generator_.rows() / 2; }
  const RationalMatrix& generator() const { return generator_; }
  // |det G|
  const Scalar& covolume() const { return covolume_; }

 private:
  RationalMatrix generator_;
  Scalar covolume_;
};

Lattice make_lattice(const RationalMatrix& entries);

// 1 / |det G|, exact.
Scalar lattice_density(const Lattice& lattice);

// G^{-1} p integral.
bool contains(const Lattice& lattice, const std::vector<Scalar>& point);

bool same_point_set(const Lattice& a, const Lattice& b);

// Generator of the section L ∩ span{x_i, w_i : i in axes}, written in the
// coordinates (x_axes..., w_axes...) and put in canonical (column Hermite)
// form. The section always has full rank 2|axes| because L has full rank.
RationalMatrix coordinate_section(const Lattice& lattice, std::span<const std::size_t> axes);

// Places a section generator back into R^{2d}: the inverse of the coordinate
// restriction above, with zero entries outside the axes.
RationalMatrix embed_section(const RationalMatrix& section, std::span<const std::size_t> axes,
                             std::size_t dimension);

// Decomposition L = ⊙ A_i Z^2 with each 2x2 block A_i acting on the pair
// (x_i, w_i). blocks[k] belongs to axis pairing[k].
struct ProductForm {
  std::vector<RationalMatrix> blocks;
  std::vector<std::size_t> pairing;

  std::size_t dimension() const { return blocks.size(); }
  std::vector<Scalar> determinants() const;  // |det A_i|
  Lattice assemble() const;
};

Lattice assemble_product(std::span<const RationalMatrix> blocks);

// Exact. The sections L ∩ (x_i, w_i) always span a sublattice of L; L is a
// product exactly when that sublattice has index 1.
std::optional<ProductForm> detect_product_form(const Lattice& lattice);

// The maximal product sublattice ⊙ (L ∩ (x_i, w_i)); every product
// sublattice of L that respects the coordinate pairing is contained in it.
ProductForm maximal_product_sublattice(const Lattice& lattice);

// Finest partition of the axis pairs into groups with L = ⊕ (L ∩ group).
struct Factorization {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<Lattice> factors;  // factors[k] lives in R^{2 |groups[k]|}
};

Factorization factorize(const Lattice& lattice);

// G_sub = G_super * coefficients with integral coefficients.
struct SublatticeEmbedding {
  Lattice sub;
  Lattice super;
  IntMatrix coefficients;
  BigInt index;  // |det coefficients|
};

// Throws DimensionMismatch; empty when sub is not contained in super.
std::optional<SublatticeEmbedding> sublattice_embedding(const Lattice& sub, const Lattice& super);

// One representative per coset of sub in super, reduced into the half-open
// fundamental parallelepiped of sub's generator and ordered lexicographically
// by Smith-basis digits. The first representative is always 0.
std::vector<std::vector<Scalar>> coset_representatives(const SublatticeEmbedding& embedding);

// J = [[0, I], [-I, 0]]
RationalMatrix standard_symplectic_form(std::size_t d);

enum class SymplecticKind { BlockDiagonalOrthogonal, Swap, Other };

class SymplecticMap {
 public:
  // Throws NotSymplectic unless M^T J M == J.
  static SymplecticMap make(RationalMatrix matrix);
  static SymplecticMap swap(std::size_t d);
  // diag(B, B^{-T}) for orthogonal B; throws NotSymplectic if B^T B != I.
  static SymplecticMap orthogonal(const RationalMatrix& b);

  const RationalMatrix& matrix() const { return matrix_; }
  SymplecticKind kind() const { return kind_; }
  bool gaussian_invariant() const { return kind_ != SymplecticKind::Other; }

 private:
  SymplecticMap(RationalMatrix matrix, SymplecticKind kind)
      : matrix_(std::move(matrix)), kind_(kind) {}

  RationalMatrix matrix_;
  SymplecticKind kind_;
};

struct SymplecticImage {
  Lattice lattice;
  Lattice source;
  SymplecticMap map;
  // The Gabor system over `lattice` with the Gaussian window has the same
  // spanning properties as the one over `source`.
  bool gaussian_equivalent = false;
};

// Throws DimensionMismatch.
SymplecticImage apply_symplectic(const Lattice& lattice, const SymplecticMap& map);

// Present iff L = M Z^{2d} for some M that is both orthogonal and symplectic;
// the returned M has that property and its columns form a basis of L.
std::optional<RationalMatrix> orthosymplectic_basis(const Lattice& lattice);

}  // namespace gaborlab
