#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"

#include "gaborlab/lattice.hpp"

namespace gaborlab {

// Composition (l_1, ..., l_d) of n into positive parts.
struct Splitting {
  std::vector<std::size_t> l;
  std::size_t n = 0;

  friend bool operator==(const Splitting&, const Splitting&) = default;
};

// All compositions of n into d positive parts, lexicographic.
std::vector<Splitting> compositions(std::size_t n, std::size_t d);

enum class Comparison { Strict, NonStrict };

// Compositions of n with l_i < dets[i] (or l_i <= dets[i]), lexicographic.
std::vector<Splitting> find_splittings(std::span<const Scalar> dets, std::size_t n,
                                       Comparison cmp = Comparison::Strict);

// Compositions of n into d parts with prod l_i < sum l_i.
std::vector<Splitting> characterize_relevant_splittings(std::size_t d, std::size_t n);

// A product sublattice respecting the coordinate pairing, with its embedding.
struct ProductCandidate {
  ProductForm form;
  SublatticeEmbedding embedding;
};

// The maximal product sublattice first (whatever its index), then every
// product sublattice of it whose index in L is at most `bound`, ordered by
// index, then by the tuple of per-plane indices, then by per-plane Hermite
// form [[p, 0], [q, r]] (p ascending, then q).
std::vector<ProductCandidate> product_sublattices(const Lattice& lattice, const BigInt& bound);

// The cosets of a product sublattice split into d groupings, one per plane.
// For an incompleteness certificate every per-grouping density l_i / det A_i
// is < 1; for the critical variant below it is <= 1.
struct CosetCertificate {
  ProductForm product;
  SublatticeEmbedding embedding;
  Splitting splitting;
  std::vector<std::vector<Scalar>> cosets;
  std::vector<std::vector<std::size_t>> groupings;  // indices into cosets
  std::vector<Scalar> per_grouping_density;
};

using IncompletenessCertificate = CosetCertificate;

// Uses the first feasible splitting and assigns cosets in representative
// order. Empty when the product is not a sublattice of L or no splitting
// satisfies the comparison.
std::optional<CosetCertificate> build_coset_certificate(const Lattice& lattice,
                                                        const ProductForm& product,
                                                        Comparison cmp = Comparison::Strict);

std::optional<IncompletenessCertificate> build_incompleteness_certificate(
    const Lattice& lattice, const ProductForm& product);

std::optional<IncompletenessCertificate> find_incompleteness_certificate(const Lattice& lattice,
                                                                         const BigInt& bound = 4);
// The searches below also accept a precomputed product_sublattices list.
std::optional<IncompletenessCertificate> find_incompleteness_certificate(
    std::span<const ProductCandidate> candidates);

// A product sublattice all of whose planar factors have density > 1, so
// each factor is a frame and so is L.
struct FrameMonotonicityCertificate {
  ProductForm product;
  SublatticeEmbedding embedding;
  std::vector<Scalar> factor_densities;
};

std::optional<FrameMonotonicityCertificate> certify_frame_by_sublattice(const Lattice& lattice,
                                                                        const BigInt& bound = 4);
std::optional<FrameMonotonicityCertificate> certify_frame_by_sublattice(
    std::span<const ProductCandidate> candidates);

// Complete but not a frame. The maximal product sublattice has factors of
// density >= 1 (a tensor product of complete systems, so L is complete), and
// a coset splitting with l_i <= det A_i exists: a tensor product of functions
// that nearly vanish on each grouping then defeats every lower frame bound.
struct CriticalCertificate {
  ProductForm complete_sublattice;
  CosetCertificate splitting;
};

std::optional<CriticalCertificate> find_critical_certificate(const Lattice& lattice,
                                                             const BigInt& bound = 4);
std::optional<CriticalCertificate> find_critical_certificate(std::span<const ProductCandidate> candidates);

nlohmann::json to_json(const RationalMatrix& m);
nlohmann::json to_json(const std::vector<Scalar>& v);
nlohmann::json to_json(const Splitting& s);
nlohmann::json to_json(const CosetCertificate& c);
nlohmann::json to_json(const FrameMonotonicityCertificate& c);
nlohmann::json to_json(const CriticalCertificate& c);

}  // namespace gaborlab
