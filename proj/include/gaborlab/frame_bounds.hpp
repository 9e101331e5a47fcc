#pragma once

#include <cstddef>
#include <vector>

#include "json.hpp"

#include "gaborlab/lattice.hpp"
#include "gaborlab/signal.hpp"

namespace gaborlab {

struct GridParams {
  double h = 1.0 / 16;
  double T = 6;
  double R = 8;
};

// h = 1/16, T = 6, R = 8 (d = 1); h = 1/8, T = 4, R = 4 (d = 2);
// h = 1/6, T = 3, R = 3 (d = 3).
GridParams default_grid(std::size_t d);

// Lattice points with |lambda| <= R, ordered lexicographically by their
// integer coefficient vector. Throws EmptyTruncation when R <= 0.
std::vector<TFPoint> lattice_points_in_ball(const Lattice& lattice, double R);

// S_R f = sum over |lambda| <= R of V_g f(lambda) pi(lambda) g, on f's grid.
// The sum runs over a fixed number of chunks whose partial results are
// combined by a pairwise tree, so the output does not depend on the number
// of threads. Throws EmptyTruncation, GridTooCoarse, DimensionMismatch.
SampledSignal frame_operator_apply(const GaussianWindow& g, const Lattice& lattice, double R,
                                   const SampledSignal& f);

struct EstimatorConfig {
  double tol = 1e-8;
  std::size_t max_iterations = 5000;
  std::size_t block_size = 16;
};

struct FrameBoundsEstimate {
  double A_est = 0;
  double B_est = 0;
  double R = 0;
  double h = 0;
  double T = 0;
  double residual_A = 0;
  double residual_B = 0;
  std::size_t iterations_A = 0;
  std::size_t iterations_B = 0;
  bool converged = false;
  std::size_t trial_dimension = 0;
  std::size_t lattice_points = 0;
};

// Extreme Rayleigh quotients of the truncated frame operator S_R over the
// span of the Hermite functions whose time-frequency footprint lies in the
// ball of radius R/2: tensor products h_a with sum (a_i + 1) <= pi (R/2)^2.
// B_est comes from block power iteration, A_est from block inverse iteration,
// each with Rayleigh-Ritz. On non-convergence the best estimate is returned
// with converged == false.
// Throws GridTooCoarse if h > 1/4, if R > 1/(2h), or if the sampled trial
// functions are not orthonormal to 1e-8 (support T too small).
FrameBoundsEstimate frame_bounds_estimate(const Lattice& lattice, const GridParams& grid,
                                          const EstimatorConfig& cfg = {});

// Orthonormal Hermite functions h_0 .. h_{count-1} for the window
// normalization (h_0 = g_1), sampled at the given points.
std::vector<std::vector<double>> hermite_functions(const std::vector<double>& t, std::size_t count);

struct TwoScaleThresholds {
  double positive_floor = 1e-2;
  double vanishing_ceiling = 1e-3;
  double ratio = 0.5;
};

enum class LowerBoundTrend { Positive, Vanishing, Inconclusive };

struct TwoScaleResult {
  FrameBoundsEstimate coarse;
  FrameBoundsEstimate fine;  // (2R, h/2, 2T)
  double ratio = 0;          // A_fine / A_coarse
  LowerBoundTrend trend = LowerBoundTrend::Inconclusive;
};

TwoScaleResult two_scale_test(const Lattice& lattice, const GridParams& grid,
                              const TwoScaleThresholds& thresholds = {},
                              const EstimatorConfig& cfg = {});

// Smallest eigenvalue of the Gram matrix of pi(lambda) g over |lambda| <= R,
// entries in closed form. Throws EmptyTruncation when R <= 0.
double gram_smallest_eig(const Lattice& lattice, double R);

std::string_view to_string(LowerBoundTrend trend);

nlohmann::json to_json(const FrameBoundsEstimate& e);
nlohmann::json to_json(const TwoScaleResult& r);

}  // namespace gaborlab
