#include "gaborlab/signal.hpp"

#include <cmath>
#include <numbers>

#include "gaborlab/error.hpp"

namespace gaborlab {
namespace {

constexpr double kPi = std::numbers::pi;

void require_fine_grid(double h) {
  if (h > kMaxGridStep) {
    throw Error(ErrorCode::GridTooCoarse,
                "grid step " + std::to_string(h) + " exceeds 1/4; frequencies alias");
  }
}

// Evaluates sum_t f(t) prod_i kernel_i(t_i) where kernel_i already carries the
// trapezoid weight of axis i.
Complex separable_sum(const SampledSignal& f, const std::vector<std::vector<Complex>>& kernels) {
  const std::size_t d = f.dimension();
  const std::size_t n = f.per_axis();
  if (d == 1) {
    Complex s = 0;
    for (std::size_t i = 0; i < n; ++i) s += f[i] * kernels[0][i];
    return s;
  }
  // contract the last axis first, then work outwards
  std::vector<Complex> partial(f.values());
  std::size_t len = f.size();
  for (std::size_t axis = d; axis-- > 0;) {
    const std::size_t outer = len / n;
    std::vector<Complex> next(outer);
    for (std::size_t o = 0; o < outer; ++o) {
      Complex s = 0;
      for (std::size_t i = 0; i < n; ++i) s += partial[o * n + i] * kernels[axis][i];
      next[o] = s;
    }
    partial = std::move(next);
    len = outer;
  }
  return partial[0];
}

}  // namespace

double gaussian_1d(double t) { return std::pow(2.0, 0.25) * std::exp(-kPi * t * t); }

double window_eval(const GaussianWindow& g, std::span<const double> x) {
  double r2 = 0;
  for (double v : x) r2 += v * v;
  return std::pow(2.0, static_cast<double>(g.d) / 4.0) * std::exp(-kPi * r2);
}

SampledSignal::SampledSignal(std::size_t d, double h, double T) : d_(d), h_(h), T_(T), n_(0) {
  if (d == 0 || !(h > 0) || !(T > 0) || !std::isfinite(h) || !std::isfinite(T)) {
    throw Error(ErrorCode::BadRange, "grid needs d >= 1, h > 0, T > 0");
  }
  const double cells = 2 * T / h;
  if (std::abs(cells - std::round(cells)) > 1e-9 * cells) {
    throw Error(ErrorCode::BadRange, "2T/h must be an integer");
  }
  n_ = static_cast<std::size_t>(std::llround(cells)) + 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= n_;
  values_.assign(total, Complex(0));
}

SampledSignal SampledSignal::from_function(std::size_t d, double h, double T,
                                           const std::function<Complex(std::span<const double>)>& f) {
  SampledSignal s(d, h, T);
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto p = s.point(i);
    s.values_[i] = f(p);
  }
  return s;
}

SampledSignal SampledSignal::from_window(const GaussianWindow& g, double h, double T) {
  return from_function(g.d, h, T, [&](std::span<const double> t) { return Complex(window_eval(g, t)); });
}

std::vector<double> SampledSignal::point(std::size_t flat) const {
  std::vector<double> p(d_);
  for (std::size_t axis = d_; axis-- > 0;) {
    p[axis] = coordinate(flat % n_);
    flat /= n_;
  }
  return p;
}

std::vector<double> SampledSignal::axis_weights() const {
  std::vector<double> w(n_, h_);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

Complex SampledSignal::at(std::span<const double> x) const {
  if (x.size() != d_) throw Error(ErrorCode::DimensionMismatch, "point dimension differs from signal");
  std::size_t flat = 0;
  for (std::size_t axis = 0; axis < d_; ++axis) {
    const double pos = (x[axis] + T_) / h_;
    const double idx = std::round(pos);
    if (std::abs(pos - idx) > 1e-9) throw Error(ErrorCode::BadRange, "point is not on the sample grid");
    if (idx < 0 || idx > static_cast<double>(n_ - 1)) return 0;
    flat = flat * n_ + static_cast<std::size_t>(idx);
  }
  return values_[flat];
}

Complex SampledSignal::inner(const SampledSignal& other) const {
  if (other.d_ != d_ || other.n_ != n_ || other.h_ != h_) {
    throw Error(ErrorCode::DimensionMismatch, "signals live on different grids");
  }
  const auto w = axis_weights();
  std::vector<std::vector<Complex>> kernels(d_, std::vector<Complex>(w.begin(), w.end()));
  SampledSignal product = *this;
  for (std::size_t i = 0; i < size(); ++i) product.values_[i] *= std::conj(other.values_[i]);
  return separable_sum(product, kernels);
}

double SampledSignal::norm_squared() const { return inner(*this).real(); }

Complex stft_point(const SampledSignal& f, const GaussianWindow& g, const TFPoint& lambda) {
  require_fine_grid(f.step());
  const std::size_t d = f.dimension();
  if (g.d != d || lambda.x.size() != d || lambda.omega.size() != d) {
    throw Error(ErrorCode::DimensionMismatch, "window, signal and point dimensions differ");
  }
  const auto w = f.axis_weights();
  std::vector<std::vector<Complex>> kernels(d, std::vector<Complex>(f.per_axis()));
  for (std::size_t axis = 0; axis < d; ++axis)
    for (std::size_t i = 0; i < f.per_axis(); ++i) {
      const double t = f.coordinate(i);
      kernels[axis][i] = w[i] * gaussian_1d(t - lambda.x[axis]) *
                         std::polar(1.0, -2 * kPi * lambda.omega[axis] * t);
    }
  return separable_sum(f, kernels);
}

Complex gabor_inner_product(const TFPoint& lambda, const TFPoint& mu) {
  Complex out = 1;
  for (std::size_t i = 0; i < lambda.x.size(); ++i) {
    const double dx = lambda.x[i] - mu.x[i];
    const double dw = lambda.omega[i] - mu.omega[i];
    out *= std::polar(std::exp(-kPi * (dx * dx + dw * dw) / 2), kPi * dw * (lambda.x[i] + mu.x[i]));
  }
  return out;
}

Complex bargmann_point(const SampledSignal& f, std::span<const Complex> z, BargmannKernel kernel) {
  require_fine_grid(f.step());
  const std::size_t d = f.dimension();
  if (z.size() != d) throw Error(ErrorCode::DimensionMismatch, "z has the wrong dimension");
  const auto w = f.axis_weights();
  const Complex twist = kernel == BargmannKernel::Standard ? Complex(1) : Complex(0, 1);
  std::vector<std::vector<Complex>> kernels(d, std::vector<Complex>(f.per_axis()));
  for (std::size_t axis = 0; axis < d; ++axis)
    for (std::size_t i = 0; i < f.per_axis(); ++i) {
      const double t = f.coordinate(i);
      const Complex zi = z[axis];
      kernels[axis][i] = std::pow(2.0, 0.25) * w[i] *
                         std::exp(2 * kPi * twist * t * zi - kPi * t * t - kPi * zi * zi / 2.0);
    }
  return separable_sum(f, kernels);
}

}  // namespace gaborlab
