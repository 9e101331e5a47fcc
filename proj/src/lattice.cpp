#include "gaborlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>

#include "gaborlab/error.hpp"
#include "gaborlab/smith.hpp"

namespace gaborlab {
namespace {

std::size_t coordinate_of(std::span<const std::size_t> axes, std::size_t row, std::size_t d) {
  const std::size_t k = axes.size();
  return row < k ? axes[row] : d + axes[row - k];
}

RationalMatrix scaled(const RationalMatrix& m, const Scalar& factor) {
  RationalMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) *= factor;
  return out;
}

// Restricted growth strings in lexicographic order.
void for_each_set_partition(std::size_t n,
                            const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> labels(n, 0);
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t pos, std::size_t used) {
    if (pos == n) {
      visit(labels);
      return;
    }
    for (std::size_t label = 0; label <= used && label < n; ++label) {
      labels[pos] = label;
      recurse(pos + 1, std::max(used, label + 1));
    }
  };
  if (n > 0) recurse(0, 0);
}

}  // namespace

Lattice::Lattice(RationalMatrix generator) : generator_(std::move(generator)) {
  if (!generator_.square()) {
    throw Error(ErrorCode::DimensionMismatch, "generator matrix must be square");
  }
  if (generator_.rows() == 0 || generator_.rows() % 2 != 0) {
    throw Error(ErrorCode::OddDimension,
                "generator size " + std::to_string(generator_.rows()) + " is not 2d");
  }
  covolume_ = abs(determinant(generator_));
  if (covolume_ == 0) throw Error(ErrorCode::SingularGenerator, "determinant is zero");
}

Lattice make_lattice(const RationalMatrix& entries) { return Lattice(entries); }

Scalar lattice_density(const Lattice& lattice) { return Scalar(1) / lattice.covolume(); }

bool contains(const Lattice& lattice, const std::vector<Scalar>& point) {
  auto inv = inverse(lattice.generator());
  for (const Scalar& c : (*inv) * point) {
    if (!is_integral(c)) return false;
  }
  return true;
}

bool same_point_set(const Lattice& a, const Lattice& b) {
  if (a.generator().rows() != b.generator().rows()) return false;
  auto e = sublattice_embedding(a, b);
  return e && e->index == 1;
}

RationalMatrix coordinate_section(const Lattice& lattice, std::span<const std::size_t> axes) {
  const std::size_t d = lattice.dimension();
  const std::size_t n = 2 * d;
  std::vector<bool> in_group(n, false);
  for (std::size_t a : axes) {
    in_group[a] = true;
    in_group[d + a] = true;
  }
  const RationalMatrix& g = lattice.generator();
  const RationalMatrix integral = scaled(g, Scalar(common_denominator(g)));

  std::vector<std::size_t> others;
  for (std::size_t c = 0; c < n; ++c)
    if (!in_group[c]) others.push_back(c);
  IntMatrix constraints(others.size(), n);
  for (std::size_t r = 0; r < others.size(); ++r)
    for (std::size_t c = 0; c < n; ++c)
      constraints(r, c) = boost::multiprecision::numerator(integral(others[r], c));

  const RationalMatrix points = g * to_rational(integer_kernel(constraints));
  const std::size_t k = 2 * axes.size();
  RationalMatrix section(k, points.cols());
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < points.cols(); ++c) section(r, c) = points(coordinate_of(axes, r, d), c);
  return canonical_basis(section);
}

RationalMatrix embed_section(const RationalMatrix& section, std::span<const std::size_t> axes,
                             std::size_t dimension) {
  RationalMatrix out(2 * dimension, section.cols());
  for (std::size_t r = 0; r < section.rows(); ++r)
    for (std::size_t c = 0; c < section.cols(); ++c)
      out(coordinate_of(axes, r, dimension), c) = section(r, c);
  return out;
}

std::vector<Scalar> ProductForm::determinants() const {
  std::vector<Scalar> dets;
  dets.reserve(blocks.size());
  for (const auto& b : blocks) dets.push_back(abs(determinant(b)));
  return dets;
}

Lattice ProductForm::assemble() const {
  const std::size_t d = blocks.size();
  RationalMatrix g(2 * d, 2 * d);
  for (std::size_t k = 0; k < d; ++k) {
    const std::size_t i = pairing[k];
    const RationalMatrix& b = blocks[k];
    g(i, i) = b(0, 0);
    g(i, d + i) = b(0, 1);
    g(d + i, i) = b(1, 0);
    g(d + i, d + i) = b(1, 1);
  }
  return Lattice(std::move(g));
}

Lattice assemble_product(std::span<const RationalMatrix> blocks) {
  ProductForm form;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    form.blocks.push_back(blocks[i]);
    form.pairing.push_back(i);
  }
  return form.assemble();
}

ProductForm maximal_product_sublattice(const Lattice& lattice) {
  ProductForm form;
  for (std::size_t i = 0; i < lattice.dimension(); ++i) {
    const std::size_t axis[] = {i};
    form.blocks.push_back(coordinate_section(lattice, axis));
    form.pairing.push_back(i);
  }
  return form;
}

std::optional<ProductForm> detect_product_form(const Lattice& lattice) {
  ProductForm form = maximal_product_sublattice(lattice);
  Scalar volume = 1;
  for (const Scalar& det : form.determinants()) volume *= det;
  if (volume != lattice.covolume()) return std::nullopt;
  return form;
}

Factorization factorize(const Lattice& lattice) {
  const std::size_t d = lattice.dimension();
  std::vector<std::vector<std::vector<std::size_t>>> candidates;
  for_each_set_partition(d, [&](const std::vector<std::size_t>& labels) {
    std::size_t count = *std::max_element(labels.begin(), labels.end()) + 1;
    std::vector<std::vector<std::size_t>> groups(count);
    for (std::size_t axis = 0; axis < d; ++axis) groups[labels[axis]].push_back(axis);
    candidates.push_back(std::move(groups));
  });
  // finest first; ties keep the lexicographic order of the growth strings
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });

  for (const auto& groups : candidates) {
    std::vector<RationalMatrix> sections;
    Scalar volume = 1;
    for (const auto& group : groups) {
      sections.push_back(coordinate_section(lattice, group));
      volume *= abs(determinant(sections.back()));
    }
    if (volume != lattice.covolume()) continue;
    Factorization out;
    out.groups = groups;
    for (auto& s : sections) out.factors.emplace_back(std::move(s));
    return out;
  }
  // the single-group partition always qualifies
  throw std::logic_error("factorize: no valid partition");
}

std::optional<SublatticeEmbedding> sublattice_embedding(const Lattice& sub, const Lattice& super) {
  if (sub.generator().rows() != super.generator().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "sublattice and superlattice dimensions differ");
  }
  auto inv = inverse(super.generator());
  auto coefficients = to_integer((*inv) * sub.generator());
  if (!coefficients) return std::nullopt;
  Scalar det = abs(determinant(to_rational(*coefficients)));
  return SublatticeEmbedding{sub, super, *coefficients, boost::multiprecision::numerator(det)};
}

std::vector<std::vector<Scalar>> coset_representatives(const SublatticeEmbedding& embedding) {
  const SmithForm snf = smith_normal_form(embedding.coefficients);
  const IntMatrix left_inverse = *to_integer(*inverse(to_rational(snf.left)));
  const std::size_t n = embedding.coefficients.rows();
  const RationalMatrix& super = embedding.super.generator();
  const RationalMatrix& sub = embedding.sub.generator();
  const RationalMatrix sub_inverse = *inverse(sub);

  std::vector<BigInt> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = snf.diagonal(i, i);

  std::vector<std::vector<Scalar>> reps;
  std::vector<BigInt> digits(n, 0);
  while (true) {
    std::vector<Scalar> k(n, Scalar(0));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) k[r] += Scalar(left_inverse(r, c) * digits[c]);
    std::vector<Scalar> point = super * k;
    std::vector<Scalar> coords = sub_inverse * point;
    for (auto& c : coords) c = fractional_part(c);
    reps.push_back(sub * coords);

    // odometer, last digit fastest
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < radix[pos]) break;
      digits[pos] = 0;
      if (pos == 0) return reps;
    }
    if (n == 0) return reps;
  }
}

RationalMatrix standard_symplectic_form(std::size_t d) {
  RationalMatrix j(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    j(i, d + i) = 1;
    j(d + i, i) = -1;
  }
  return j;
}

SymplecticMap SymplecticMap::make(RationalMatrix matrix) {
  if (!matrix.square() || matrix.rows() % 2 != 0 || matrix.rows() == 0) {
    throw Error(ErrorCode::NotSymplectic, "symplectic matrices are square of even size");
  }
  const std::size_t d = matrix.rows() / 2;
  const RationalMatrix j = standard_symplectic_form(d);
  if (matrix.transpose() * j * matrix != j) {
    throw Error(ErrorCode::NotSymplectic, "M^T J M != J");
  }
  if (matrix == j) return SymplecticMap(std::move(matrix), SymplecticKind::Swap);

  bool block_diagonal = true;
  RationalMatrix b(d, d), c(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) {
      if (matrix(r, d + s) != 0 || matrix(d + r, s) != 0) block_diagonal = false;
      b(r, s) = matrix(r, s);
      c(r, s) = matrix(d + r, d + s);
    }
  if (block_diagonal && b.transpose() * b == RationalMatrix::identity(d) && c == b) {
    return SymplecticMap(std::move(matrix), SymplecticKind::BlockDiagonalOrthogonal);
  }
  return SymplecticMap(std::move(matrix), SymplecticKind::Other);
}

SymplecticMap SymplecticMap::swap(std::size_t d) { return make(standard_symplectic_form(d)); }

SymplecticMap SymplecticMap::orthogonal(const RationalMatrix& b) {
  if (!b.square() || b.transpose() * b != RationalMatrix::identity(b.rows())) {
    throw Error(ErrorCode::NotSymplectic, "B is not orthogonal");
  }
  return make(block_diagonal(b, b));
}

SymplecticImage apply_symplectic(const Lattice& lattice, const SymplecticMap& map) {
  if (map.matrix().rows() != lattice.generator().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic map and lattice dimensions differ");
  }
  return SymplecticImage{Lattice(map.matrix() * lattice.generator()), lattice, map,
                         map.gaussian_invariant()};
}

std::optional<RationalMatrix> orthosymplectic_basis(const Lattice& lattice) {
  if (lattice.covolume() != 1) return std::nullopt;
  const std::size_t n = lattice.generator().rows();
  const std::size_t d = n / 2;
  const RationalMatrix& g = lattice.generator();
  const auto gram_exact = to_integer(g.transpose() * g);
  if (!gram_exact) return std::nullopt;

  // Enumerate k with k^T Q k == 1 inside the box |k_i| <= sqrt((Q^{-1})_ii).
  constexpr std::int64_t kMaxEntry = 1'000'000'000;
  constexpr double kMaxBox = 2e6;
  std::vector<std::int64_t> gram(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const BigInt& v = (*gram_exact)(r, c);
      if (boost::multiprecision::abs(v) > kMaxEntry) return std::nullopt;
      gram[r * n + c] = v.convert_to<std::int64_t>();
    }
  const RationalMatrix gram_inverse = *inverse(to_rational(*gram_exact));
  std::vector<std::int64_t> bound(n);
  double box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    bound[i] = static_cast<std::int64_t>(std::floor(std::sqrt(to_double(gram_inverse(i, i))) + 1e-9));
    box *= 2.0 * static_cast<double>(bound[i]) + 1;
  }
  if (box > kMaxBox) return std::nullopt;

  std::vector<std::vector<std::int64_t>> units;
  std::vector<std::int64_t> k(n);
  std::function<void(std::size_t)> walk = [&](std::size_t pos) {
    if (pos == n) {
      std::int64_t norm = 0;
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) norm += k[r] * gram[r * n + c] * k[c];
      if (norm != 1) return;
      auto first = std::find_if(k.begin(), k.end(), [](std::int64_t v) { return v != 0; });
      if (first != k.end() && *first > 0) units.push_back(k);
      return;
    }
    for (std::int64_t v = -bound[pos]; v <= bound[pos]; ++v) {
      k[pos] = v;
      walk(pos + 1);
    }
  };
  walk(0);
  if (units.size() != n) return std::nullopt;

  std::vector<std::vector<Scalar>> vectors;
  for (const auto& u : units) {
    std::vector<Scalar> coeff(u.begin(), u.end());
    vectors.push_back(g * coeff);
  }
  const RationalMatrix j = standard_symplectic_form(d);
  auto omega = [&](const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
    Scalar s = 0;
    const std::vector<Scalar> jb = j * b;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * jb[i];
    return s;
  };

  RationalMatrix basis(n, n);
  std::vector<bool> used(n, false);
  std::size_t slot = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (used[a]) continue;
    std::optional<std::size_t> partner;
    Scalar sign = 0;
    for (std::size_t b = 0; b < n; ++b) {
      if (used[b] || b == a) continue;
      Scalar w = omega(vectors[a], vectors[b]);
      if (w == 0) continue;
      if (abs(w) != 1 || partner) return std::nullopt;
      partner = b;
      sign = w;
    }
    if (!partner || slot >= d) return std::nullopt;
    used[a] = used[*partner] = true;
    for (std::size_t r = 0; r < n; ++r) {
      basis(r, slot) = vectors[a][r];
      basis(r, d + slot) = sign * vectors[*partner][r];
    }
    ++slot;
  }
  if (basis.transpose() * j * basis != j) return std::nullopt;
  if (basis.transpose() * basis != RationalMatrix::identity(n)) return std::nullopt;
  return basis;
}

}  // namespace gaborlab
