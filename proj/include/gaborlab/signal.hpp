#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gaborlab {

using Complex = std::complex<double>;

// g_d(x) = 2^{d/4} exp(-pi |x|^2), unit norm in L^2(R^d).
struct GaussianWindow {
  std::size_t d = 1;
};

double window_eval(const GaussianWindow& g, std::span<const double> x);
// 2^{1/4} exp(-pi t^2)
double gaussian_1d(double t);

// A time-frequency point lambda = (x, omega).
struct TFPoint {
  std::vector<double> x;
  std::vector<double> omega;
};

// Samples on {-T, -T + h, ..., T}^d, last axis fastest.
class SampledSignal {
 public:
  // Throws BadRange unless h > 0, T > 0 and 2T/h is an integer.
  SampledSignal(std::size_t d, double h, double T);

  static SampledSignal from_function(std::size_t d, double h, double T,
                                     const std::function<Complex(std::span<const double>)>& f);
  static SampledSignal from_window(const GaussianWindow& g, double h, double T);

  std::size_t dimension() const { return d_; }
  double step() const { return h_; }
  double support() const { return T_; }
  std::size_t per_axis() const { return n_; }
  std::size_t size() const { return values_.size(); }

  double coordinate(std::size_t i) const { return -T_ + static_cast<double>(i) * h_; }
  std::vector<double> point(std::size_t flat) const;
  // One-dimensional trapezoid weights (h, with h/2 at both ends).
  std::vector<double> axis_weights() const;

  Complex& operator[](std::size_t flat) { return values_[flat]; }
  const Complex& operator[](std::size_t flat) const { return values_[flat]; }
  const std::vector<Complex>& values() const { return values_; }

  // Value at a grid point; zero outside the support. Throws BadRange when x
  // is not (within 1e-9 h) a grid point.
  Complex at(std::span<const double> x) const;

  // Trapezoid-rule <this, other>, linear in the first argument.
  Complex inner(const SampledSignal& other) const;
  double norm_squared() const;

 private:
  std::size_t d_;
  double h_;
  double T_;
  std::size_t n_;
  std::vector<Complex> values_;
};

// Largest admissible grid step: frequencies up to 2 must stay well resolved.
inline constexpr double kMaxGridStep = 0.25;

// V_g f(x, omega) = integral of f(t) e^{-2 pi i omega.t} g(t - x) dt by the
// trapezoid rule on f's grid. Throws GridTooCoarse if h > 1/4.
Complex stft_point(const SampledSignal& f, const GaussianWindow& g, const TFPoint& lambda);

// <pi(lambda) g, pi(mu) g> in closed form, pi(x, w) = M_w T_x.
Complex gabor_inner_product(const TFPoint& lambda, const TFPoint& mu);

// The standard kernel exp(2 pi t.z - pi t.t - pi z.z / 2) satisfies
// V_g f(x, -xi) = e^{pi i x.xi} Bf(x + i xi) e^{-pi |z|^2 / 2}. The variant with
// exp(2 pi i t.z ...) is kept so the two conventions can be compared.
enum class BargmannKernel { Standard, ImaginaryExponent };

// 2^{d/4} integral f(t) K(t, z) dt by the trapezoid rule.
// Throws GridTooCoarse if h > 1/4.
Complex bargmann_point(const SampledSignal& f, std::span<const Complex> z,
                       BargmannKernel kernel = BargmannKernel::Standard);

}  // namespace gaborlab
