#include "gaborlab/zak.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>

#include "gaborlab/error.hpp"

namespace gaborlab {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Visits every k in {-K..K}^d, last coordinate fastest.
template <typename Fn>
void for_each_shift(std::size_t d, int K, Fn&& fn) {
  std::vector<int> k(d, -K);
  while (true) {
    fn(k);
    std::size_t pos = d;
    while (pos > 0) {
      --pos;
      if (++k[pos] <= K) break;
      k[pos] = -K;
      if (pos == 0) return;
    }
  }
}

void check_args(std::size_t d, std::span<const double> x, std::span<const double> omega, int K) {
  if (x.size() != d || omega.size() != d) throw Error(ErrorCode::DimensionMismatch, "Zak argument dimension");
  if (K < 1) throw Error(ErrorCode::BadRange, "Zak truncation K must be >= 1");
}

// Zg_1 on the m x m grid, row-major in (x index, w index).
std::vector<Complex> planar_table(std::size_t m, double offset) {
  const GaussianWindow g1{1};
  std::vector<Complex> table(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double x[] = {(static_cast<double>(i) + offset) / static_cast<double>(m)};
      const double w[] = {(static_cast<double>(j) + offset) / static_cast<double>(m)};
      table[i * m + j] = zak_point(g1, x, w);
    }
  return table;
}

// Visits all grid points of [0,1)^{2d}; idx holds (x_1..x_d, w_1..w_d)
// indices and the callback gets the product of planar moduli.
template <typename Fn>
void scan_grid(std::size_t d, std::size_t m, const std::vector<double>& planar_abs, Fn&& fn) {
  std::vector<std::size_t> idx(2 * d, 0);
  while (true) {
    double v = 1;
    for (std::size_t i = 0; i < d; ++i) v *= planar_abs[idx[i] * m + idx[d + i]];
    fn(idx, v);
    std::size_t pos = 2 * d;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < m) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
  }
}

std::vector<double> planar_moduli(std::size_t m, double offset) {
  auto table = planar_table(m, offset);
  std::vector<double> out(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) out[i] = std::abs(table[i]);
  return out;
}

}  // namespace

Complex zak_point(const GaussianWindow& g, std::span<const double> x, std::span<const double> omega, int K) {
  check_args(g.d, x, omega, K);
  Complex sum = 0;
  std::vector<double> shifted(g.d);
  for_each_shift(g.d, K, [&](const std::vector<int>& k) {
    double phase = 0;
    for (std::size_t i = 0; i < g.d; ++i) {
      shifted[i] = x[i] - k[i];
      phase += k[i] * omega[i];
    }
    sum += window_eval(g, shifted) * std::polar(1.0, kTwoPi * phase);
  });
  return sum;
}

Complex zak_point(const SampledSignal& f, std::span<const double> x, std::span<const double> omega, int K) {
  check_args(f.dimension(), x, omega, K);
  const std::size_t d = f.dimension();
  Complex sum = 0;
  std::vector<double> shifted(d);
  for_each_shift(d, K, [&](const std::vector<int>& k) {
    double phase = 0;
    for (std::size_t i = 0; i < d; ++i) {
      shifted[i] = x[i] - k[i];
      phase += k[i] * omega[i];
    }
    sum += f.at(shifted) * std::polar(1.0, kTwoPi * phase);
  });
  return sum;
}

ZakScan zak_min_scan(const GaussianWindow& g, std::size_t m, double offset) {
  if (m < 8) throw Error(ErrorCode::BadRange, "Zak scan needs m >= 8");
  const auto planar = planar_moduli(m, offset);
  ZakScan scan{g.d, m, offset, std::numeric_limits<double>::infinity(), 0, {}};
  std::vector<std::size_t> best;
  scan_grid(g.d, m, planar, [&](const std::vector<std::size_t>& idx, double v) {
    if (v < scan.min_modulus) {
      scan.min_modulus = v;
      best = idx;
    }
    scan.max_modulus = std::max(scan.max_modulus, v);
  });
  for (auto i : best) scan.argmin.push_back((static_cast<double>(i) + offset) / static_cast<double>(m));
  return scan;
}

ZakBounds zak_frame_bounds_integer(const GaussianWindow& g, std::size_t m) {
  ZakScan scan = zak_min_scan(g, m);
  return {scan.min_modulus * scan.min_modulus, scan.max_modulus * scan.max_modulus, m};
}

void write_zak_csv(std::ostream& out, const GaussianWindow& g, std::size_t m, double offset) {
  if (m < 8) throw Error(ErrorCode::BadRange, "Zak scan needs m >= 8");
  const auto planar = planar_moduli(m, offset);
  for (std::size_t i = 0; i < g.d; ++i) out << 'x' << i + 1 << ',';
  for (std::size_t i = 0; i < g.d; ++i) out << 'w' << i + 1 << ',';
  out << "abs_z\n";
  out << std::setprecision(17);
  scan_grid(g.d, m, planar, [&](const std::vector<std::size_t>& idx, double v) {
    for (auto i : idx) out << (static_cast<double>(i) + offset) / static_cast<double>(m) << ',';
    out << v << '\n';
  });
}

}  // namespace gaborlab
