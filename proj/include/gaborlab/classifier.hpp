#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "gaborlab/frame_bounds.hpp"
#include "gaborlab/lattice.hpp"

namespace gaborlab {

enum class Outcome { Frame, CompleteNotFrame, Incomplete, RieszSubspace, Unknown };
enum class Confidence { Exact, Numeric };

std::string_view to_string(Outcome o);
std::string_view to_string(Confidence c);

struct Evidence {
  std::string rule;
  bool fired = false;      // the rule reached a conclusion
  bool decisive = false;   // the verdict rests on this item
  bool algebraic = true;   // exact arithmetic only
  nlohmann::json detail;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  Confidence confidence = Confidence::Exact;
  // Incomplete, and the system is a Riesz basis for its closed span.
  bool riesz_subspace = false;
  std::vector<Evidence> evidence;

  // Name of the decisive rule, or "none".
  std::string rule() const;
};

struct AnalysisConfig {
  BigInt index_bound = 4;
  bool numeric_fallback = false;
  std::optional<GridParams> grid;  // default_grid(d) when empty
  TwoScaleThresholds thresholds;
  EstimatorConfig estimator;
};

// alpha Z x beta Z. Throws NonPositive unless alpha, beta > 0.
Verdict classify_1d(const Scalar& alpha, const Scalar& beta);

// Any lattice in the time-frequency plane, decided by its density.
Verdict classify_plane(const Lattice& lattice);

// Frame x Frame -> Frame; any Incomplete -> Incomplete; Frame and
// CompleteNotFrame only, with at least one of the latter -> CompleteNotFrame;
// otherwise Unknown. Exact only if every factor is exact.
Verdict tensor_combine(std::span<const Verdict> factors);

// Rules, in order: density; splitting into coordinate groups (recursing into
// the factors); frame sublattice; coset splitting; critical coset splitting;
// then, only while undecided, integer type and the numeric two-scale test
// (when enabled). Every exact rule is consulted and recorded even after the
// first decisive one. Throws UnsupportedDimension for d > 3.
Verdict classify(const Lattice& lattice, const AnalysisConfig& cfg = {});

// Transfers the verdict of the source lattice when the map leaves the
// Gaussian invariant; otherwise classifies the image directly.
Verdict classify(const SymplecticImage& image, const AnalysisConfig& cfg = {});

nlohmann::json to_json(const Verdict& v);

struct ParameterAxis {
  std::string name;
  std::vector<Scalar> values;
};

struct PhaseCell {
  std::vector<Scalar> params;  // in axis order
  Verdict verdict;
};

// lo, lo + step, ..., up to and including hi. Throws BadRange when the range
// is empty or step <= 0.
std::vector<Scalar> scalar_range(const Scalar& lo, const Scalar& hi, const Scalar& step);

// Classifies every cell of the product of the axes (first axis slowest).
// Axes must name parameters of the family; families: sep2d, skew, cor6,
// threed. Cells are evaluated concurrently and returned in grid order.
// Throws UnknownFamily.
std::vector<PhaseCell> phase_diagram(const std::string& family, const std::vector<ParameterAxis>& axes,
                                     const AnalysisConfig& cfg = {});

// Header: axis names..., outcome, confidence, rule.
void write_phase_csv(std::ostream& out, const std::vector<ParameterAxis>& axes,
                     const std::vector<PhaseCell>& cells);

}  // namespace gaborlab
