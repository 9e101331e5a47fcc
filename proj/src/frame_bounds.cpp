#include "gaborlab/frame_bounds.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "gaborlab/error.hpp"
#include "gaborlab/parallel.hpp"

namespace gaborlab {
namespace {

constexpr double kPi = std::numbers::pi;
// e^{-pi 64} is far below double precision relative to the window peak.
constexpr double kWindowReach = 8.0;
constexpr std::size_t kApplyChunks = 64;
constexpr std::size_t kRowChunk = 2048;

using Mat = Eigen::MatrixXcd;

void validate_grid(const GridParams& grid) {
  if (!(grid.R > 0)) throw Error(ErrorCode::EmptyTruncation, "truncation radius must be positive");
  if (grid.h > kMaxGridStep) {
    throw Error(ErrorCode::GridTooCoarse, "grid step " + std::to_string(grid.h) + " exceeds 1/4");
  }
  if (grid.R > (1 + 1e-12) / (2 * grid.h)) {
    throw Error(ErrorCode::GridTooCoarse,
                "R = " + std::to_string(grid.R) + " exceeds 1/(2h); frequencies alias");
  }
}

// Multi-indices a with sum (a_i + 1) <= budget, lexicographic; 0 always kept.
std::vector<std::vector<std::size_t>> trial_indices(std::size_t d, double budget) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> a(d, 0);
  std::function<void(std::size_t, double)> rec = [&](std::size_t i, double used) {
    if (i == d) {
      out.push_back(a);
      return;
    }
    const double after = static_cast<double>(d - i - 1);  // each later index costs at least 1
    for (std::size_t n = 0; used + static_cast<double>(n + 1) + after <= budget + 1e-12; ++n) {
      a[i] = n;
      rec(i + 1, used + static_cast<double>(n + 1));
    }
  };
  rec(0, 0);
  if (out.empty()) out.push_back(std::vector<std::size_t>(d, 0));
  return out;
}

struct Extreme {
  double value = 0;
  double residual = 0;
  std::size_t iterations = 0;
  bool converged = false;
};

Mat orthonormal_columns(const Mat& y) {
  Eigen::HouseholderQR<Mat> qr(y);
  return qr.householderQ() * Mat::Identity(y.rows(), y.cols());
}

Mat start_block(std::size_t n, std::size_t p) {
  std::mt19937_64 rng(0x5a17c0de);
  std::normal_distribution<double> normal;
  Mat x(n, p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t r = 0; r < n; ++r) x(r, c) = Complex(normal(rng), normal(rng));
  return orthonormal_columns(x);
}

// Subspace iteration with Rayleigh-Ritz on S. `op` maps a block to S X (for
// the top of the spectrum) or to (S + shift)^{-1} X (for the bottom).
template <typename Op>
Extreme block_iteration(const Mat& s, Op op, bool smallest, double residual_scale,
                        const EstimatorConfig& cfg) {
  const std::size_t n = s.rows();
  const std::size_t p = std::min<std::size_t>(std::max<std::size_t>(cfg.block_size, 1), n);
  Mat x = start_block(n, p);
  Extreme best;
  for (std::size_t it = 1; it <= cfg.max_iterations; ++it) {
    Mat q = orthonormal_columns(op(x));
    Mat h = q.adjoint() * s * q;
    h = (h + h.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<Mat> eig(h);
    x = q * eig.eigenvectors();
    const Eigen::Index j = smallest ? 0 : static_cast<Eigen::Index>(p) - 1;
    const double theta = eig.eigenvalues()(j);
    const Eigen::VectorXcd v = x.col(j);
    const double scale = residual_scale > 0 ? residual_scale : std::abs(theta);
    const double residual = scale > 0 ? (s * v - theta * v).norm() / scale : 0.0;
    best = {theta, residual, it, residual < cfg.tol};
    if (best.converged) break;
  }
  return best;
}

std::vector<double> axis_coordinates(const GridParams& grid) {
  SampledSignal probe(1, grid.h, grid.T);
  std::vector<double> t(probe.per_axis());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = probe.coordinate(i);
  return t;
}

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n, h);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

// S_c = V^* V with V[lambda][a] = <h_a, pi(lambda) g>.
Mat compressed_operator(const std::vector<TFPoint>& points,
                        const std::vector<std::vector<std::size_t>>& indices,
                        const std::vector<std::vector<double>>& hermite, const std::vector<double>& t,
                        const std::vector<double>& w) {
  const std::size_t d = indices.front().size();
  const std::size_t n1 = hermite.size();
  const std::size_t nt = t.size();
  const std::size_t dim = indices.size();
  Mat s = Mat::Zero(dim, dim);
  for (std::size_t start = 0; start < points.size(); start += kRowChunk) {
    const std::size_t rows = std::min(kRowChunk, points.size() - start);
    Mat v(rows, dim);
    parallel_for(rows, [&](std::size_t r) {
      const TFPoint& p = points[start + r];
      std::vector<std::vector<Complex>> axis(d, std::vector<Complex>(n1));
      std::vector<Complex> atom(nt);
      for (std::size_t i = 0; i < d; ++i) {
        const double lo = p.x[i] - kWindowReach, hi = p.x[i] + kWindowReach;
        std::size_t first = nt, last = 0;
        for (std::size_t k = 0; k < nt; ++k) {
          if (t[k] < lo || t[k] > hi) {
            atom[k] = 0;
            continue;
          }
          first = std::min(first, k);
          last = k;
          atom[k] = w[k] * gaussian_1d(t[k] - p.x[i]) * std::polar(1.0, -2 * kPi * p.omega[i] * t[k]);
        }
        for (std::size_t n = 0; n < n1; ++n) {
          Complex acc = 0;
          for (std::size_t k = first; k <= last && first < nt; ++k) acc += hermite[n][k] * atom[k];
          axis[i][n] = acc;
        }
      }
      for (std::size_t a = 0; a < dim; ++a) {
        Complex prod = 1;
        for (std::size_t i = 0; i < d; ++i) prod *= axis[i][indices[a][i]];
        v(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(a)) = prod;
      }
    });
    s.noalias() += v.adjoint() * v;
  }
  return (s + s.adjoint()) * 0.5;
}

}  // namespace

GridParams default_grid(std::size_t d) {
  switch (d) {
    case 1: return {1.0 / 16, 6, 8};
    case 2: return {1.0 / 8, 4, 4};
    case 3: return {1.0 / 6, 3, 3};
  }
  throw Error(ErrorCode::UnsupportedDimension, "numerics support d <= 3");
}

std::vector<TFPoint> lattice_points_in_ball(const Lattice& lattice, double R) {
  if (!(R > 0)) throw Error(ErrorCode::EmptyTruncation, "truncation radius must be positive");
  const std::size_t d = lattice.dimension();
  const std::size_t n = 2 * d;
  const RationalMatrix& gq = lattice.generator();
  const RationalMatrix ginv_q = *inverse(gq);
  std::vector<double> g(n * n);
  std::vector<long> bound(n);
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0;
    for (std::size_t c = 0; c < n; ++c) {
      g[r * n + c] = to_double(gq(r, c));
      row += std::pow(to_double(ginv_q(r, c)), 2);
    }
    bound[r] = static_cast<long>(std::ceil(R * std::sqrt(row) + 1e-9));
  }

  std::vector<TFPoint> out;
  std::vector<long> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = -bound[i];
  const double r2 = R * R * (1 + 1e-12);
  std::vector<double> p(n);
  while (true) {
    double norm2 = 0;
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0;
      for (std::size_t c = 0; c < n; ++c) s += g[r * n + c] * static_cast<double>(k[c]);
      p[r] = s;
      norm2 += s * s;
    }
    if (norm2 <= r2) out.push_back({{p.begin(), p.begin() + d}, {p.begin() + d, p.end()}});
    std::size_t pos = n;
    bool done = true;
    while (pos > 0) {
      --pos;
      if (++k[pos] <= bound[pos]) {
        done = false;
        break;
      }
      k[pos] = -bound[pos];
    }
    if (done) break;
  }
  return out;
}

SampledSignal frame_operator_apply(const GaussianWindow& g, const Lattice& lattice, double R,
                                   const SampledSignal& f) {
  if (g.d != lattice.dimension() || f.dimension() != g.d) {
    throw Error(ErrorCode::DimensionMismatch, "window, lattice and signal dimensions differ");
  }
  const auto points = lattice_points_in_ball(lattice, R);
  if (points.empty()) throw Error(ErrorCode::EmptyTruncation, "no lattice points within R");
  if (f.step() > kMaxGridStep) throw Error(ErrorCode::GridTooCoarse, "grid step exceeds 1/4");

  const std::size_t chunks = std::min(kApplyChunks, points.size());
  std::vector<SampledSignal> partial(chunks, SampledSignal(f.dimension(), f.step(), f.support()));
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = points.size() * c / chunks;
    const std::size_t end = points.size() * (c + 1) / chunks;
    SampledSignal& acc = partial[c];
    for (std::size_t j = begin; j < end; ++j) {
      const TFPoint& lambda = points[j];
      const Complex coeff = stft_point(f, g, lambda);
      for (std::size_t s = 0; s < acc.size(); ++s) {
        const auto t = acc.point(s);
        double shifted = 0, phase = 0;
        for (std::size_t i = 0; i < g.d; ++i) {
          shifted += (t[i] - lambda.x[i]) * (t[i] - lambda.x[i]);
          phase += lambda.omega[i] * t[i];
        }
        const double amp = std::pow(2.0, static_cast<double>(g.d) / 4) * std::exp(-kPi * shifted);
        acc[s] += coeff * std::polar(amp, 2 * kPi * phase);
      }
    }
  });
  return tree_reduce(std::move(partial), [](SampledSignal a, SampledSignal b) {
    for (std::size_t s = 0; s < a.size(); ++s) a[s] += b[s];
    return a;
  });
}

std::vector<std::vector<double>> hermite_functions(const std::vector<double>& t, std::size_t count) {
  std::vector<std::vector<double>> h(count, std::vector<double>(t.size()));
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double s = std::sqrt(2 * kPi) * t[k];
    if (count > 0) h[0][k] = gaussian_1d(t[k]);
    if (count > 1) h[1][k] = std::sqrt(2.0) * s * h[0][k];
    for (std::size_t n = 2; n < count; ++n) {
      const double nn = static_cast<double>(n);
      h[n][k] = std::sqrt(2 / nn) * s * h[n - 1][k] - std::sqrt((nn - 1) / nn) * h[n - 2][k];
    }
  }
  return h;
}

FrameBoundsEstimate frame_bounds_estimate(const Lattice& lattice, const GridParams& grid,
                                          const EstimatorConfig& cfg) {
  validate_grid(grid);
  const std::size_t d = lattice.dimension();
  const double r = grid.R / 2;
  const auto indices = trial_indices(d, kPi * r * r);
  std::size_t n1 = 1;
  for (const auto& a : indices)
    for (auto v : a) n1 = std::max(n1, v + 1);

  const auto t = axis_coordinates(grid);
  const auto w = trapezoid_weights(t.size(), grid.h);
  const auto hermite = hermite_functions(t, n1);
  double worst = 0;
  for (std::size_t m = 0; m < n1; ++m)
    for (std::size_t n = 0; n <= m; ++n) {
      double s = 0;
      for (std::size_t k = 0; k < t.size(); ++k) s += w[k] * hermite[m][k] * hermite[n][k];
      worst = std::max(worst, std::abs(s - (m == n ? 1.0 : 0.0)));
    }
  if (worst > 1e-8) {
    throw Error(ErrorCode::GridTooCoarse, "trial functions are not resolved on the grid (orthonormality error " +
                                              std::to_string(worst) + ")");
  }

  const auto points = lattice_points_in_ball(lattice, grid.R);
  if (points.empty()) throw Error(ErrorCode::EmptyTruncation, "no lattice points within R");
  const Mat s = compressed_operator(points, indices, hermite, t, w);

  FrameBoundsEstimate est;
  est.R = grid.R;
  est.h = grid.h;
  est.T = grid.T;
  est.trial_dimension = indices.size();
  est.lattice_points = points.size();

  Extreme top = block_iteration(s, [&](const Mat& x) { return Mat(s * x); }, false, 0.0, cfg);
  est.B_est = std::max(top.value, 0.0);
  est.residual_B = top.residual;
  est.iterations_B = top.iterations;

  const double shift = 1e-12 * std::max(est.B_est, 1e-300);
  Mat shifted = s;
  shifted.diagonal().array() += shift;
  Eigen::LDLT<Mat> ldlt(shifted);
  Extreme bottom = block_iteration(s, [&](const Mat& x) { return Mat(ldlt.solve(x)); }, true,
                                   est.B_est, cfg);
  est.A_est = std::clamp(bottom.value, 0.0, est.B_est);
  est.residual_A = bottom.residual;
  est.iterations_A = bottom.iterations;
  est.converged = top.converged && bottom.converged;
  return est;
}

TwoScaleResult two_scale_test(const Lattice& lattice, const GridParams& grid,
                              const TwoScaleThresholds& thresholds, const EstimatorConfig& cfg) {
  TwoScaleResult out;
  out.coarse = frame_bounds_estimate(lattice, grid, cfg);
  out.fine = frame_bounds_estimate(lattice, {grid.h / 2, 2 * grid.T, 2 * grid.R}, cfg);
  out.ratio = out.coarse.A_est > 0 ? out.fine.A_est / out.coarse.A_est : 0.0;
  if (out.coarse.A_est > thresholds.positive_floor && out.ratio > thresholds.ratio) {
    out.trend = LowerBoundTrend::Positive;
  } else if (out.coarse.A_est < thresholds.vanishing_ceiling && out.ratio < thresholds.ratio) {
    out.trend = LowerBoundTrend::Vanishing;
  } else {
    out.trend = LowerBoundTrend::Inconclusive;
  }
  return out;
}

double gram_smallest_eig(const Lattice& lattice, double R) {
  const auto points = lattice_points_in_ball(lattice, R);
  if (points.empty()) throw Error(ErrorCode::EmptyTruncation, "no lattice points within R");
  const auto n = static_cast<Eigen::Index>(points.size());
  Mat gram(n, n);
  parallel_for(points.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < points.size(); ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = gabor_inner_product(points[j], points[i]);
  });
  Eigen::SelfAdjointEigenSolver<Mat> eig(gram, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

std::string_view to_string(LowerBoundTrend trend) {
  switch (trend) {
    case LowerBoundTrend::Positive: return "positive";
    case LowerBoundTrend::Vanishing: return "vanishing";
    case LowerBoundTrend::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

nlohmann::json to_json(const FrameBoundsEstimate& e) {
  return {
      {"A_est", e.A_est},
      {"B_est", e.B_est},
      {"R", e.R},
      {"h", e.h},
      {"T", e.T},
      {"residual", {{"A", e.residual_A}, {"B", e.residual_B}}},
      {"iterations", {{"A", e.iterations_A}, {"B", e.iterations_B}}},
      {"trial_dimension", e.trial_dimension},
      {"lattice_points", e.lattice_points},
      {"classification_flags", {{"converged", e.converged}}},
  };
}

nlohmann::json to_json(const TwoScaleResult& r) {
  return {
      {"coarse", to_json(r.coarse)},
      {"fine", to_json(r.fine)},
      {"ratio", r.ratio},
      {"classification_flags", {{"lower_bound", to_string(r.trend)},
                                {"converged", r.coarse.converged && r.fine.converged}}},
  };
}

}  // namespace gaborlab
