#include "gaborlab/certificates.hpp"

#include <algorithm>
#include <functional>

namespace gaborlab {
namespace {

bool admissible(std::size_t l, const Scalar& det, Comparison cmp) {
  return cmp == Comparison::Strict ? Scalar(l) < det : Scalar(l) <= det;
}

// Compositions with each part passing `keep`, generated in lexicographic order
// with pruning on the prefix.
std::vector<Splitting> enumerate(std::size_t n, std::size_t d,
                                 const std::function<bool(std::size_t, std::size_t)>& keep) {
  std::vector<Splitting> out;
  if (d == 0 || n < d) return out;
  std::vector<std::size_t> parts(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
    if (i + 1 == d) {
      if (left >= 1 && keep(i, left)) {
        parts[i] = left;
        out.push_back({parts, n});
      }
      return;
    }
    const std::size_t slots_after = d - i - 1;
    for (std::size_t l = 1; l + slots_after <= left; ++l) {
      if (!keep(i, l)) continue;
      parts[i] = l;
      rec(i + 1, left - l);
    }
  };
  rec(0, n);
  return out;
}

// index-m sublattices of Z^2 as column Hermite forms [[p, 0], [q, r]]
std::vector<IntMatrix> planar_hermite_forms(std::size_t m) {
  std::vector<IntMatrix> out;
  for (std::size_t p = 1; p <= m; ++p) {
    if (m % p != 0) continue;
    const std::size_t r = m / p;
    for (std::size_t q = 0; q < r; ++q) out.emplace_back(2, 2, std::initializer_list<BigInt>{p, 0, q, r});
  }
  return out;
}

// All tuples (m_1..m_d) of positive integers with product <= budget, ordered
// by product and then lexicographically.
std::vector<std::vector<std::size_t>> index_tuples(std::size_t d, std::size_t budget) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(d);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t prod) {
    if (i == d) {
      out.push_back(cur);
      return;
    }
    for (std::size_t m = 1; prod * m <= budget; ++m) {
      cur[i] = m;
      rec(i + 1, prod * m);
    }
  };
  rec(0, 1);
  auto product = [](const std::vector<std::size_t>& t) {
    std::size_t p = 1;
    for (auto m : t) p *= m;
    return p;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const auto& a, const auto& b) { return product(a) < product(b); });
  return out;
}

std::vector<Scalar> block_dets(const ProductForm& form) { return form.determinants(); }

}  // namespace

std::vector<Splitting> compositions(std::size_t n, std::size_t d) {
  return enumerate(n, d, [](std::size_t, std::size_t) { return true; });
}

std::vector<Splitting> find_splittings(std::span<const Scalar> dets, std::size_t n, Comparison cmp) {
  return enumerate(n, dets.size(),
                   [&](std::size_t i, std::size_t l) { return admissible(l, dets[i], cmp); });
}

std::vector<Splitting> characterize_relevant_splittings(std::size_t d, std::size_t n) {
  std::vector<Splitting> out;
  for (auto& s : compositions(n, d)) {
    std::size_t prod = 1;
    for (auto l : s.l) {
      prod *= l;
      if (prod >= n) break;  // sum == n, so the inequality already fails
    }
    if (prod < n) out.push_back(std::move(s));
  }
  return out;
}

std::vector<ProductCandidate> product_sublattices(const Lattice& lattice, const BigInt& bound) {
  const ProductForm maximal = maximal_product_sublattice(lattice);
  const Lattice maximal_lattice = maximal.assemble();
  auto base = sublattice_embedding(maximal_lattice, lattice);
  std::vector<ProductCandidate> out;
  out.push_back({maximal, *base});
  if (base->index > bound) return out;

  const std::size_t d = lattice.dimension();
  const std::size_t budget = static_cast<std::size_t>(BigInt(bound / base->index));
  for (const auto& tuple : index_tuples(d, budget)) {
    if (std::all_of(tuple.begin(), tuple.end(), [](std::size_t m) { return m == 1; })) continue;
    std::vector<std::vector<IntMatrix>> per_plane;
    for (std::size_t m : tuple) per_plane.push_back(planar_hermite_forms(m));

    // odometer over the per-plane choices, last plane fastest
    std::vector<std::size_t> pick(d, 0);
    bool more = true;
    while (more) {
      ProductForm form = maximal;
      for (std::size_t i = 0; i < d; ++i) form.blocks[i] = maximal.blocks[i] * to_rational(per_plane[i][pick[i]]);
      auto e = sublattice_embedding(form.assemble(), lattice);
      out.push_back({std::move(form), std::move(*e)});

      more = false;
      for (std::size_t pos = d; pos-- > 0;) {
        if (++pick[pos] < per_plane[pos].size()) {
          more = true;
          break;
        }
        pick[pos] = 0;
      }
    }
  }
  return out;
}

namespace {

std::optional<CosetCertificate> coset_certificate_from(const ProductForm& product,
                                                       const SublatticeEmbedding& embedding,
                                                       Comparison cmp) {
  const std::vector<Scalar> dets = block_dets(product);
  const std::size_t n = static_cast<std::size_t>(embedding.index);
  auto splittings = find_splittings(dets, n, cmp);
  if (splittings.empty()) return std::nullopt;

  CosetCertificate cert{product, embedding, splittings.front(), coset_representatives(embedding), {}, {}};
  std::size_t next = 0;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    std::vector<std::size_t> group;
    for (std::size_t k = 0; k < cert.splitting.l[i]; ++k) group.push_back(next++);
    cert.groupings.push_back(std::move(group));
    cert.per_grouping_density.push_back(Scalar(cert.splitting.l[i]) / dets[i]);
  }
  return cert;
}

}  // namespace

std::optional<CosetCertificate> build_coset_certificate(const Lattice& lattice,
                                                        const ProductForm& product, Comparison cmp) {
  auto embedding = sublattice_embedding(product.assemble(), lattice);
  if (!embedding) return std::nullopt;
  return coset_certificate_from(product, *embedding, cmp);
}

std::optional<IncompletenessCertificate> build_incompleteness_certificate(const Lattice& lattice,
                                                                          const ProductForm& product) {
  return build_coset_certificate(lattice, product, Comparison::Strict);
}

std::optional<IncompletenessCertificate> find_incompleteness_certificate(
    std::span<const ProductCandidate> candidates) {
  for (const auto& c : candidates) {
    if (auto cert = coset_certificate_from(c.form, c.embedding, Comparison::Strict)) return cert;
  }
  return std::nullopt;
}

std::optional<IncompletenessCertificate> find_incompleteness_certificate(const Lattice& lattice,
                                                                         const BigInt& bound) {
  return find_incompleteness_certificate(product_sublattices(lattice, bound));
}

std::optional<FrameMonotonicityCertificate> certify_frame_by_sublattice(
    std::span<const ProductCandidate> candidates) {
  for (const auto& c : candidates) {
    std::vector<Scalar> densities;
    bool frame = true;
    for (const Scalar& det : c.form.determinants()) {
      densities.push_back(Scalar(1) / det);
      frame = frame && det < 1;
    }
    if (frame) return FrameMonotonicityCertificate{c.form, c.embedding, densities};
  }
  return std::nullopt;
}

std::optional<FrameMonotonicityCertificate> certify_frame_by_sublattice(const Lattice& lattice,
                                                                        const BigInt& bound) {
  return certify_frame_by_sublattice(product_sublattices(lattice, bound));
}

std::optional<CriticalCertificate> find_critical_certificate(std::span<const ProductCandidate> candidates) {
  if (candidates.empty()) return std::nullopt;
  const ProductForm& maximal = candidates.front().form;
  for (const Scalar& det : maximal.determinants()) {
    if (det > 1) return std::nullopt;
  }
  for (const auto& c : candidates) {
    if (auto cert = coset_certificate_from(c.form, c.embedding, Comparison::NonStrict)) {
      return CriticalCertificate{maximal, std::move(*cert)};
    }
  }
  return std::nullopt;
}

std::optional<CriticalCertificate> find_critical_certificate(const Lattice& lattice,
                                                             const BigInt& bound) {
  return find_critical_certificate(product_sublattices(lattice, bound));
}

nlohmann::json to_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json to_json(const std::vector<Scalar>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

nlohmann::json to_json(const Splitting& s) { return {{"l", s.l}, {"n", s.n}}; }

nlohmann::json to_json(const CosetCertificate& c) {
  nlohmann::json cosets = nlohmann::json::array();
  for (const auto& v : c.cosets) cosets.push_back(to_json(v));
  return {
      {"sublattice_generator", to_json(c.product.assemble().generator())},
      {"index", to_string(c.embedding.index)},
      {"splitting", to_json(c.splitting)},
      {"cosets", std::move(cosets)},
      {"groupings", c.groupings},
      {"per_grouping_density", to_json(c.per_grouping_density)},
  };
}

nlohmann::json to_json(const FrameMonotonicityCertificate& c) {
  return {
      {"sublattice_generator", to_json(c.product.assemble().generator())},
      {"index", to_string(c.embedding.index)},
      {"factor_densities", to_json(c.factor_densities)},
  };
}

nlohmann::json to_json(const CriticalCertificate& c) {
  std::vector<Scalar> densities;
  for (const auto& det : c.complete_sublattice.determinants()) densities.push_back(Scalar(1) / det);
  return {
      {"complete_sublattice_generator", to_json(c.complete_sublattice.assemble().generator())},
      {"complete_factor_densities", to_json(densities)},
      {"splitting", to_json(c.splitting)},
  };
}

}  // namespace gaborlab
