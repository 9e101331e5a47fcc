#include "gaborlab/classifier.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "gaborlab/certificates.hpp"
#include "gaborlab/error.hpp"
#include "gaborlab/families.hpp"
#include "gaborlab/parallel.hpp"
#include "gaborlab/zak.hpp"

namespace gaborlab {
namespace {

constexpr std::size_t kMaxDimension = 3;

std::size_t zak_resolution(std::size_t d) { return d == 1 ? 64 : d == 2 ? 16 : 8; }

// Accumulates evidence; the first firing rule decides, later ones must agree.
class Ledger {
 public:
  bool decided() const { return decided_; }

  void consulted(std::string rule, nlohmann::json detail, bool algebraic = true) {
    verdict_.evidence.push_back({std::move(rule), false, false, algebraic, std::move(detail)});
  }

  void fired(Outcome outcome, Confidence confidence, std::string rule, nlohmann::json detail,
             bool algebraic = true) {
    Evidence e{std::move(rule), true, false, algebraic, std::move(detail)};
    if (!decided_) {
      decided_ = true;
      e.decisive = true;
      verdict_.outcome = outcome;
      verdict_.confidence = confidence;
    } else if (outcome != verdict_.outcome) {
      throw std::logic_error("rule " + e.rule + " contradicts " + verdict_.rule());
    }
    verdict_.evidence.push_back(std::move(e));
  }

  void flag_riesz() { verdict_.riesz_subspace = true; }

  Verdict take() && {
    if (!decided_) verdict_.outcome = Outcome::Unknown;
    return std::move(verdict_);
  }

 private:
  Verdict verdict_;
  bool decided_ = false;
};

void integer_type_rule(const Lattice& lattice, Ledger& ledger) {
  auto basis = orthosymplectic_basis(lattice);
  if (!basis) {
    ledger.consulted("integer-type", {{"orthosymplectic_basis", nullptr}});
    return;
  }
  const GaussianWindow g{lattice.dimension()};
  const std::size_t m = zak_resolution(g.d);
  const ZakScan coarse = zak_min_scan(g, m);
  const ZakScan fine = zak_min_scan(g, 2 * m);
  ledger.fired(Outcome::CompleteNotFrame, Confidence::Numeric, "integer-type",
               {{"orthosymplectic_basis", to_json(*basis)}});
  ledger.fired(Outcome::CompleteNotFrame, Confidence::Numeric, "zak-scan",
               {{"m", {coarse.m, fine.m}},
                {"min_abs", {coarse.min_modulus, fine.min_modulus}},
                {"max_abs", {coarse.max_modulus, fine.max_modulus}},
                {"argmin", fine.argmin}},
               false);
}

void numeric_rule(const Lattice& lattice, const AnalysisConfig& cfg, Ledger& ledger) {
  const GridParams grid = cfg.grid.value_or(default_grid(lattice.dimension()));
  try {
    const TwoScaleResult r = two_scale_test(lattice, grid, cfg.thresholds, cfg.estimator);
    if (r.trend == LowerBoundTrend::Positive) {
      ledger.fired(Outcome::Frame, Confidence::Numeric, "two-scale-bounds", to_json(r), false);
    } else {
      ledger.consulted("two-scale-bounds", to_json(r), false);
    }
  } catch (const Error& e) {
    ledger.consulted("two-scale-bounds", {{"error", e.what()}}, false);
  }
}

}  // namespace

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Frame: return "Frame";
    case Outcome::CompleteNotFrame: return "CompleteNotFrame";
    case Outcome::Incomplete: return "Incomplete";
    case Outcome::RieszSubspace: return "RieszSubspace";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Confidence c) { return c == Confidence::Exact ? "exact" : "numeric"; }

std::string Verdict::rule() const {
  for (const auto& e : evidence)
    if (e.decisive) return e.rule;
  return "none";
}

Verdict classify_plane(const Lattice& lattice) {
  if (lattice.dimension() != 1) throw Error(ErrorCode::DimensionMismatch, "planar rule needs d = 1");
  const Scalar& det = lattice.covolume();
  nlohmann::json detail = {{"determinant", to_string(det)}, {"density", to_string(Scalar(1) / det)}};
  Ledger ledger;
  if (det < 1) {
    ledger.fired(Outcome::Frame, Confidence::Exact, "planar-density", detail);
  } else if (det == 1) {
    ledger.fired(Outcome::CompleteNotFrame, Confidence::Exact, "planar-density", detail);
  } else {
    ledger.fired(Outcome::Incomplete, Confidence::Exact, "planar-density", detail);
    ledger.flag_riesz();
  }
  return std::move(ledger).take();
}

Verdict classify_1d(const Scalar& alpha, const Scalar& beta) {
  if (alpha <= 0 || beta <= 0) {
    throw Error(ErrorCode::NonPositive, "lattice steps must be positive");
  }
  return classify_plane(Lattice(RationalMatrix(2, 2, {alpha, 0, 0, beta})));
}

Verdict tensor_combine(std::span<const Verdict> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor_combine needs at least one factor");
  const auto count = [&](Outcome o) {
    return std::count_if(factors.begin(), factors.end(), [o](const Verdict& v) { return v.outcome == o; });
  };
  const auto n = static_cast<std::ptrdiff_t>(factors.size());
  Outcome outcome = Outcome::Unknown;
  if (count(Outcome::Incomplete) > 0) {
    outcome = Outcome::Incomplete;
  } else if (count(Outcome::Frame) == n) {
    outcome = Outcome::Frame;
  } else if (count(Outcome::Frame) + count(Outcome::CompleteNotFrame) == n) {
    outcome = Outcome::CompleteNotFrame;
  }

  // Incompleteness needs only one incomplete factor; otherwise every factor counts.
  bool exact = true;
  for (const auto& v : factors) {
    const bool relevant = outcome != Outcome::Incomplete || v.outcome == Outcome::Incomplete;
    if (relevant && v.confidence != Confidence::Exact) exact = false;
  }
  nlohmann::json parts = nlohmann::json::array();
  for (const auto& v : factors) parts.push_back(to_json(v));

  Ledger ledger;
  if (outcome == Outcome::Unknown) {
    ledger.consulted("tensor-product", {{"factors", std::move(parts)}}, exact);
  } else {
    ledger.fired(outcome, exact ? Confidence::Exact : Confidence::Numeric, "tensor-product",
                 {{"factors", std::move(parts)}}, exact);
  }
  return std::move(ledger).take();
}

Verdict classify(const Lattice& lattice, const AnalysisConfig& cfg) {
  const std::size_t d = lattice.dimension();
  if (d > kMaxDimension) {
    throw Error(ErrorCode::UnsupportedDimension, "classification supports d <= 3, got d = " + std::to_string(d));
  }
  Ledger ledger;

  const Scalar density = lattice_density(lattice);
  if (density < 1) {
    ledger.fired(Outcome::Incomplete, Confidence::Exact, "density", {{"density", to_string(density)}});
  } else {
    ledger.consulted("density", {{"density", to_string(density)}});
  }

  if (d == 1) {
    Verdict plane = classify_plane(lattice);
    const Evidence& e = plane.evidence.front();
    ledger.fired(plane.outcome, Confidence::Exact, e.rule, e.detail);
    if (plane.riesz_subspace) ledger.flag_riesz();
  } else {
    Factorization f = factorize(lattice);
    if (f.groups.size() > 1) {
      AnalysisConfig inner = cfg;
      inner.numeric_fallback = false;
      std::vector<Verdict> parts;
      for (const auto& factor : f.factors) parts.push_back(classify(factor, inner));
      Verdict combined = tensor_combine(parts);
      Evidence e = combined.evidence.front();
      e.detail["groups"] = f.groups;
      if (combined.outcome == Outcome::Unknown) {
        ledger.consulted(e.rule, e.detail, e.algebraic);
      } else if (combined.confidence == Confidence::Exact || !ledger.decided()) {
        ledger.fired(combined.outcome, combined.confidence, e.rule, e.detail, e.algebraic);
      }
    } else {
      ledger.consulted("tensor-product", {{"groups", f.groups}});
    }
  }

  const auto candidates = product_sublattices(lattice, cfg.index_bound);
  if (auto cert = certify_frame_by_sublattice(candidates)) {
    ledger.fired(Outcome::Frame, Confidence::Exact, "frame-sublattice", to_json(*cert));
  } else {
    ledger.consulted("frame-sublattice", {{"index_bound", to_string(cfg.index_bound)}});
  }

  if (auto cert = find_incompleteness_certificate(candidates)) {
    ledger.fired(Outcome::Incomplete, Confidence::Exact, "coset-splitting", to_json(*cert));
  } else {
    ledger.consulted("coset-splitting", {{"index_bound", to_string(cfg.index_bound)}});
  }

  if (auto cert = find_critical_certificate(candidates)) {
    ledger.fired(Outcome::CompleteNotFrame, Confidence::Exact, "critical-splitting", to_json(*cert));
  } else {
    ledger.consulted("critical-splitting", {{"index_bound", to_string(cfg.index_bound)}});
  }

  if (!ledger.decided()) integer_type_rule(lattice, ledger);
  if (!ledger.decided() && cfg.numeric_fallback) numeric_rule(lattice, cfg, ledger);
  return std::move(ledger).take();
}

Verdict classify(const SymplecticImage& image, const AnalysisConfig& cfg) {
  if (!image.gaussian_equivalent) return classify(image.lattice, cfg);
  Verdict v = classify(image.source, cfg);
  const char* kind = image.map.kind() == SymplecticKind::Swap ? "swap" : "block-diagonal-orthogonal";
  v.evidence.push_back({"symplectic-transfer", true, false, true,
                        {{"kind", kind}, {"map", to_json(image.map.matrix())}}});
  return v;
}

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json evidence = nlohmann::json::array();
  for (const auto& e : v.evidence) {
    evidence.push_back({{"rule", e.rule},
                        {"fired", e.fired},
                        {"decisive", e.decisive},
                        {"algebraic", e.algebraic},
                        {"detail", e.detail}});
  }
  return {{"outcome", to_string(v.outcome)},
          {"confidence", to_string(v.confidence)},
          {"riesz_subspace", v.riesz_subspace},
          {"rule", v.rule()},
          {"evidence", std::move(evidence)}};
}

std::vector<Scalar> scalar_range(const Scalar& lo, const Scalar& hi, const Scalar& step) {
  if (step <= 0) throw Error(ErrorCode::BadRange, "step must be positive");
  if (hi < lo) throw Error(ErrorCode::BadRange, "empty range " + to_string(lo) + ":" + to_string(hi));
  std::vector<Scalar> out;
  for (Scalar v = lo; v <= hi; v += step) out.push_back(v);
  return out;
}

std::vector<PhaseCell> phase_diagram(const std::string& family, const std::vector<ParameterAxis>& axes,
                                     const AnalysisConfig& cfg) {
  static const std::vector<std::string> kFamilies = {"sep2d", "skew", "cor6", "threed"};
  if (std::find(kFamilies.begin(), kFamilies.end(), family) == kFamilies.end()) {
    throw Error(ErrorCode::UnknownFamily, "no phase diagram for family '" + family + "'");
  }
  const auto names = family_parameters(family);
  for (const auto& axis : axes) {
    if (std::find(names.begin(), names.end(), axis.name) == names.end()) {
      throw Error(ErrorCode::BadRange, "family '" + family + "' has no parameter " + axis.name);
    }
    if (axis.values.empty()) throw Error(ErrorCode::BadRange, "empty axis " + axis.name);
  }

  std::size_t total = 1;
  for (const auto& axis : axes) total *= axis.values.size();
  std::vector<PhaseCell> cells(total);
  std::vector<std::exception_ptr> failures(total);
  parallel_for(total, [&](std::size_t flat) {
    FamilySpec spec{family, {}};
    std::vector<Scalar> params(axes.size());
    std::size_t rest = flat;
    for (std::size_t i = axes.size(); i-- > 0;) {
      params[i] = axes[i].values[rest % axes[i].values.size()];
      rest /= axes[i].values.size();
      spec.params[axes[i].name] = params[i];
    }
    try {
      cells[flat] = {params, classify(build_family(spec), cfg)};
    } catch (...) {
      failures[flat] = std::current_exception();
    }
  });
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return cells;
}

void write_phase_csv(std::ostream& out, const std::vector<ParameterAxis>& axes,
                     const std::vector<PhaseCell>& cells) {
  for (const auto& axis : axes) out << axis.name << ',';
  out << "outcome,confidence,rule\n";
  for (const auto& cell : cells) {
    for (const auto& p : cell.params) out << to_string(p) << ',';
    out << to_string(cell.verdict.outcome) << ',' << to_string(cell.verdict.confidence) << ','
        << cell.verdict.rule() << '\n';
  }
}

}  // namespace gaborlab
