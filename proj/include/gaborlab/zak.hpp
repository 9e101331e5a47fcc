#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <vector>

#include "gaborlab/signal.hpp"

namespace gaborlab {

inline constexpr int kZakTerms = 12;

// Zf(x, w) = sum over k in {-K..K}^d of f(x - k) e^{2 pi i k.w}. The window
// overload evaluates every term in closed form; the signal overload reads
// f(x - k) off the sample grid, so x must be a grid point.
Complex zak_point(const GaussianWindow& g, std::span<const double> x, std::span<const double> omega,
                  int K = kZakTerms);
Complex zak_point(const SampledSignal& f, std::span<const double> x, std::span<const double> omega,
                  int K = kZakTerms);

// |Zg_d| on the grid {(i + offset) / m : 0 <= i < m}^{2d} of [0,1)^{2d}.
// The window is a tensor product, so the scan tabulates Zg_1 on the planar
// grid once and multiplies.
struct ZakScan {
  std::size_t d = 1;
  std::size_t m = 0;
  double offset = 0;
  double min_modulus = 0;
  double max_modulus = 0;
  std::vector<double> argmin;  // (x_1..x_d, w_1..w_d)
};

// Throws BadRange when m < 8.
ZakScan zak_min_scan(const GaussianWindow& g, std::size_t m, double offset = 0);

struct ZakBounds {
  double A = 0;  // min |Zg|^2 on the grid
  double B = 0;  // max |Zg|^2 on the grid
  std::size_t m = 0;
};

ZakBounds zak_frame_bounds_integer(const GaussianWindow& g, std::size_t m);

// CSV with header x1..xd,w1..wd,abs_z; one row per grid point, x outermost.
void write_zak_csv(std::ostream& out, const GaussianWindow& g, std::size_t m, double offset = 0);

}  // namespace gaborlab
