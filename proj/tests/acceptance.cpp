// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "gaborlab/certificates.hpp"
#include "gaborlab/classifier.hpp"
#include "gaborlab/error.hpp"
#include "gaborlab/families.hpp"
#include "gaborlab/frame_bounds.hpp"
#include "gaborlab/signal.hpp"
#include "gaborlab/zak.hpp"

using namespace gaborlab;

namespace {

constexpr double kPi = std::numbers::pi;

Scalar q(long p, long r = 1) { return Scalar(p, r); }

struct Check {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) note << "first failure: " << what << "; ";
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Check&)> body;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

// ---------- oracles ----------

std::vector<std::vector<std::size_t>> brute_compositions(std::size_t n, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(d, 1);
  while (true) {
    std::size_t sum = 0;
    for (auto v : t) sum += v;
    if (sum == n) out.push_back(t);
    std::size_t i = d;
    while (i > 0 && t[i - 1] == n) t[--i] = 1;
    if (i == 0) break;
    ++t[i - 1];
  }
  return out;
}

// the stated pattern: every arrangement of (n - d + 1, 1, ..., 1)
std::set<std::vector<std::size_t>> stated_pattern(std::size_t d, std::size_t n) {
  std::set<std::vector<std::size_t>> out;
  for (std::size_t pos = 0; pos < d; ++pos) {
    std::vector<std::size_t> t(d, 1);
    t[pos] = n - d + 1;
    out.insert(t);
  }
  return out;
}

double hermite_oracle(unsigned n, double t) {
  const double norm = std::pow(2.0, 0.25) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0));
  return norm * std::hermite(n, std::sqrt(2 * kPi) * t) * std::exp(-kPi * t * t);
}

// Extreme eigenvalues of the compressed frame operator of alpha Z x beta Z,
// assembled densely from sampled atoms and dense Hermite functions.
std::pair<double, double> dense_bounds(double alpha, double beta, const GridParams& grid) {
  const double r = grid.R / 2;
  const auto n_trial = static_cast<unsigned>(std::floor(kPi * r * r));
  const int nt = static_cast<int>(std::lround(2 * grid.T / grid.h)) + 1;
  Eigen::MatrixXd herm(nt, n_trial);
  Eigen::VectorXd w = Eigen::VectorXd::Constant(nt, grid.h);
  w(0) = w(nt - 1) = grid.h / 2;
  for (int k = 0; k < nt; ++k)
    for (unsigned n = 0; n < n_trial; ++n) herm(k, n) = hermite_oracle(n, -grid.T + k * grid.h);
  std::vector<std::pair<double, double>> pts;
  const int kx = static_cast<int>(grid.R / alpha) + 1, kw = static_cast<int>(grid.R / beta) + 1;
  for (int i = -kx; i <= kx; ++i)
    for (int j = -kw; j <= kw; ++j) {
      const double x = i * alpha, om = j * beta;
      if (x * x + om * om <= grid.R * grid.R * (1 + 1e-12)) pts.emplace_back(x, om);
    }
  Eigen::MatrixXcd atoms(pts.size(), nt);
  for (std::size_t p = 0; p < pts.size(); ++p)
    for (int k = 0; k < nt; ++k) {
      const double t = -grid.T + k * grid.h, s = t - pts[p].first;
      atoms(p, k) = std::conj(std::polar(std::pow(2.0, 0.25) * std::exp(-kPi * s * s), 2 * kPi * pts[p].second * t)) * w(k);
    }
  Eigen::MatrixXcd v = atoms * herm.cast<Complex>();
  Eigen::MatrixXcd s = v.adjoint() * v;
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(s, Eigen::EigenvaluesOnly).eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

Complex zak_2d_series(std::span<const double> x, std::span<const double> om) {
  Complex sum = 0;
  for (int k1 = -kZakTerms; k1 <= kZakTerms; ++k1)
    for (int k2 = -kZakTerms; k2 <= kZakTerms; ++k2) {
      const double p[] = {x[0] - k1, x[1] - k2};
      sum += window_eval(GaussianWindow{2}, p) * std::polar(1.0, 2 * kPi * (k1 * om[0] + k2 * om[1]));
    }
  return sum;
}

Complex bumpy(double t) {
  return (1.0 + 0.5 * t - 0.2 * t * t) * std::exp(-kPi * (t - 0.4) * (t - 0.4)) *
         std::polar(1.0, 2 * kPi * 0.3 * t + 0.7 * t * t);
}

const Evidence* fired(const Verdict& v, const std::string& rule) {
  for (const auto& e : v.evidence)
    if (e.rule == rule && e.fired) return &e;
  return nullptr;
}

Lattice random_generator(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  while (true) {
    RationalMatrix g(2 * d, 2 * d);
    for (std::size_t r = 0; r < 2 * d; ++r)
      for (std::size_t c = 0; c < 2 * d; ++c) g(r, c) = q(num(rng), den(rng));
    if (determinant(g) != 0) return Lattice(g);
  }
}

// ---------- criteria ----------

void exact_densities(Check& c) {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<int> num(1, 40), den(1, 17), dim(1, 3);
  for (int i = 0; i < 50; ++i) {
    const Scalar a = q(num(rng), den(rng)), b = q(num(rng), den(rng));
    c.require(lattice_density(sep2d_lattice(a, b)) == 1 / (a * b), "sep2d " + to_string(a) + "," + to_string(b));
    c.require(lattice_density(skew_lattice(a, b)) == 1 / (2 * a * b), "skew " + to_string(a) + "," + to_string(b));
    c.require(lattice_density(integer_lattice(dim(rng))) == 1, "integer lattice");
  }
  c.note << "150 densities";
}

void separable_diagram(Check& c) {
  int cells = 0;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j) {
      const Scalar a = q(i, 5), b = q(j, 5);
      const Verdict v = classify(sep2d_lattice(a, b));
      Outcome expected = Outcome::CompleteNotFrame;
      if (a < 1 && b < 1) expected = Outcome::Frame;
      if (a > 1 || b > 1) expected = Outcome::Incomplete;
      c.require(v.outcome == expected, "sep2d " + to_string(a) + "," + to_string(b));
      c.require(v.confidence == Confidence::Exact, "confidence at " + to_string(a) + "," + to_string(b));
      ++cells;
    }
  c.note << cells << " cells";
}

void skew_diagram(Check& c) {
  const auto range = scalar_range(q(1, 10), q(9, 10), q(1, 10));
  const auto cells = phase_diagram("skew", {{"a", range}, {"b", range}});
  const Scalar half = q(1, 2);
  int certified = 0;
  for (const auto& cell : cells) {
    const Scalar &a = cell.params[0], &b = cell.params[1];
    const std::string at = to_string(a) + "," + to_string(b);
    const Outcome o = cell.verdict.outcome;
    if (a < half && b < half) c.require(o == Outcome::Frame, "frame at " + at);
    if (a == half && b == half) c.require(o == Outcome::CompleteNotFrame, "critical at " + at);
    if ((a - half) * (b - half) < 0 || (a == half) != (b == half)) c.require(o == Outcome::Unknown, "unknown at " + at);
    if (a > half && b > half) {
      c.require(o == Outcome::Incomplete, "incomplete at " + at);
      const Evidence* e = fired(cell.verdict, "coset-splitting");
      c.require(e != nullptr, "certificate at " + at);
      if (e) {
        c.require(e->detail["index"] == "2", "index 2 at " + at);
        c.require(e->detail["splitting"]["l"] == nlohmann::json({1, 1}), "splitting (1,1) at " + at);
        ++certified;
      }
    }
  }
  c.note << cells.size() << " cells, " << certified << " certificates";
}

void splitting_pattern(Check& c) {
  int mismatches = 0;
  std::string first;
  for (std::size_t d = 2; d <= 5; ++d)
    for (std::size_t n = d; n <= 10; ++n) {
      std::vector<std::vector<std::size_t>> got, brute;
      for (const auto& s : characterize_relevant_splittings(d, n)) got.push_back(s.l);
      for (const auto& t : brute_compositions(n, d)) {
        std::size_t prod = 1;
        for (auto v : t) prod *= v;
        if (prod < n) brute.push_back(t);
      }
      c.require(got == brute, "brute force at d=" + std::to_string(d) + " n=" + std::to_string(n));
      const std::set<std::vector<std::size_t>> as_set(got.begin(), got.end());
      if (as_set != stated_pattern(d, n)) {
        if (!mismatches++) first = "d=" + std::to_string(d) + " n=" + std::to_string(n) + " has " +
                                   std::to_string(got.size()) + " solutions";
      }
    }
  c.require(mismatches == 0, "pattern (n-d+1,1,...,1) differs from brute force at " + std::to_string(mismatches) +
                                 " (d,n) pairs, e.g. " + first);
}

void corollary_region(Check& c) {
  const int k = 5;
  std::map<std::size_t, int> region;
  int cells = 0;
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 30; ++j) {
      const Scalar a = q(2 * i + 1, 40), b = q(2 * j + 1, 40);
      const Lattice l = cor6_lattice(k, a, b);
      ++cells;
      if (lattice_density(l) < 1) continue;
      const auto cands = product_sublattices(l, 4);
      const auto dets = cands.front().form.determinants();
      c.require(cands.front().embedding.index == k, "maximal product index");
      c.require(std::set<Scalar>(dets.begin(), dets.end()) == std::set<Scalar>{k * a, k * b}, "section determinants");
      bool any = false;
      for (const auto& s : find_splittings(dets, k)) {
        ++region[s.l[0]];
        any = true;
      }
      const Verdict v = classify(l);
      if (any) c.require(v.outcome == Outcome::Incomplete && v.rule() == "coset-splitting", "verdict in region");
    }
  std::set<std::size_t> ls;
  for (auto [l, count] : region) {
    ls.insert(l);
    c.note << "l=" << l << ": " << count << " cells; ";
  }
  c.require(ls == std::set<std::size_t>{1, k - 1}, "region set differs from {1, k-1}");
  c.note << cells << " midpoint cells";
}

void zak_zero(Check& c) {
  const GaussianWindow g1{1};
  const double half[] = {0.5};
  const double z0 = std::abs(zak_point(g1, half, half, 12));
  c.require(z0 < 1e-10, "|Zg(1/2,1/2)| = " + fmt(z0));
  const ZakScan scan = zak_min_scan(g1, 64);
  for (double v : scan.argmin) c.require(std::abs(v - 0.5) <= 1.0 / 64, "argmin cell");
  double worst = 0;
  for (auto [x1, x2, w1, w2] : {std::array{0.1, 0.7, 0.3, 0.9}, std::array{0.5, 0.5, 0.5, 0.25},
                                std::array{0.9, 0.2, 0.6, 0.45}}) {
    const double x[] = {x1, x2}, om[] = {w1, w2};
    const double xa[] = {x1}, xb[] = {x2}, wa[] = {w1}, wb[] = {w2};
    const Complex series = zak_2d_series(x, om);
    worst = std::max(worst, std::abs(series - zak_point(g1, xa, wa) * zak_point(g1, xb, wb)));
    worst = std::max(worst, std::abs(series - zak_point(GaussianWindow{2}, x, om)));
  }
  c.require(worst < 1e-10, "2D factorization error " + fmt(worst));
  c.note << "|Z(1/2,1/2)|=" << fmt(z0) << " argmin=(" << scan.argmin[0] << "," << scan.argmin[1]
         << ") factorization=" << fmt(worst);
}

void frame_bound_regimes(Check& c) {
  const GridParams grid = default_grid(1);
  // dense oracle first, then the iterative estimates on the same discretization
  for (auto beta : {q(1, 2), q(1), q(3, 2)}) {
    const auto [lo, hi] = dense_bounds(1, to_double(beta), grid);
    const FrameBoundsEstimate e = frame_bounds_estimate(rect_lattice(1, beta), grid);
    c.require(std::abs(e.A_est - lo) <= 1e-6 * std::max(1.0, hi), "A vs dense oracle at beta=" + to_string(beta));
    c.require(std::abs(e.B_est - hi) <= 1e-6 * hi, "B vs dense oracle at beta=" + to_string(beta));
  }

  const TwoScaleResult dense = two_scale_test(rect_lattice(1, q(1, 2)), grid);
  c.require(dense.coarse.A_est > 0.1, "(i) A_est " + fmt(dense.coarse.A_est));
  c.require(dense.ratio > 0.5, "(i) ratio " + fmt(dense.ratio));
  c.note << "(i) A=" << fmt(dense.coarse.A_est) << " ratio=" << fmt(dense.ratio) << "; ";

  const TwoScaleResult critical = two_scale_test(rect_lattice(1, 1), grid);
  const ZakBounds zb = zak_frame_bounds_integer(GaussianWindow{1}, 128);
  const double b = critical.coarse.B_est;
  c.require(critical.trend == LowerBoundTrend::Vanishing,
            "(ii) two-scale trend " + std::string(to_string(critical.trend)) + " (A " + fmt(critical.coarse.A_est) +
                " -> " + fmt(critical.fine.A_est) + ")");
  c.require(b >= 1.5 && b <= 3.0, "(ii) B_est " + fmt(b));
  c.require(std::abs(b - zb.B) <= 0.1 * zb.B, "(ii) B_est vs Zak B");
  c.note << "(ii) A=" << fmt(critical.coarse.A_est) << "->" << fmt(critical.fine.A_est)
         << " trend=" << to_string(critical.trend) << " B=" << fmt(b) << " zakB=" << fmt(zb.B) << "; ";

  const TwoScaleResult sparse = two_scale_test(rect_lattice(1, q(3, 2)), grid);
  c.require(sparse.trend == LowerBoundTrend::Vanishing, "(iii) trend " + std::string(to_string(sparse.trend)));
  const double e8 = gram_smallest_eig(rect_lattice(1, q(5, 4)), 8);
  const double e16 = gram_smallest_eig(rect_lattice(1, q(5, 4)), 16);
  c.require(e8 >= 0.01 && e16 >= 0.01, "(iii) Gram eigenvalue");
  c.require(std::abs(e8 - e16) <= 0.05 * e8, "(iii) Gram eigenvalue not stable");
  c.note << "(iii) A=" << fmt(sparse.coarse.A_est) << " trend=" << to_string(sparse.trend) << " gram=" << fmt(e8)
         << "," << fmt(e16);
}

void analytic_checks(Check& c) {
  const GaussianWindow w{1};
  const SampledSignal f = SampledSignal::from_function(1, 1.0 / 16, 6, [](auto t) { return bumpy(t[0]); });
  const SampledSignal g = SampledSignal::from_window(w, 1.0 / 16, 6);

  double energy = 0;
  const double step = 0.25;
  for (double x = -7; x <= 7 + 1e-9; x += step)
    for (double om = -7; om <= 7 + 1e-9; om += step) energy += std::norm(stft_point(f, w, {{x}, {om}}));
  const double unitarity = std::abs(energy * step * step - f.norm_squared()) / f.norm_squared();
  c.require(unitarity < 1e-5, "unitarity " + fmt(unitarity));

  double modulus = 0;
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) {
      const double x = 0.6 * i, om = 0.7 * j;
      modulus = std::max(modulus, std::abs(std::abs(stft_point(g, w, {{x}, {om}})) - std::exp(-kPi * (x * x + om * om) / 2)));
    }
  c.require(modulus < 1e-6, "|V_g g| " + fmt(modulus));

  double bargmann = 0;
  for (double x : {-0.8, 0.0, 0.9})
    for (double xi : {-0.6, 0.0, 0.7}) {
      const Complex z[] = {Complex(x, xi)};
      const double lhs = std::abs(stft_point(f, w, {{x}, {-xi}}));
      bargmann = std::max(bargmann, std::abs(lhs - std::abs(bargmann_point(f, z)) * std::exp(-kPi * std::norm(z[0]) / 2)));
    }
  c.require(bargmann < 1e-5, "Bargmann " + fmt(bargmann));

  double quasi = 0;
  const SampledSignal wide = SampledSignal::from_function(1, 1.0 / 16, 16, [](auto t) { return bumpy(t[0]); });
  for (auto [x, om] : {std::pair{0.25, 0.3}, {-0.5, 0.8}, {0.0, 0.55}}) {
    const double a[] = {x}, b[] = {x + 1}, v[] = {om}, v1[] = {om + 1};
    const Complex zw = zak_point(w, a, v), zf = zak_point(wide, a, v);
    const Complex phase = std::polar(1.0, 2 * kPi * om);
    quasi = std::max({quasi, std::abs(zak_point(w, b, v) - phase * zw), std::abs(zak_point(w, a, v1) - zw),
                      std::abs(zak_point(wide, b, v) - phase * zf), std::abs(zak_point(wide, a, v1) - zf)});
  }
  c.require(quasi < 1e-12, "Zak quasi-periodicity " + fmt(quasi));
  c.note << "unitarity=" << fmt(unitarity) << " modulus=" << fmt(modulus) << " bargmann=" << fmt(bargmann)
         << " zak=" << fmt(quasi);
}

void tensor_bounds(Check& c) {
  const FrameBoundsEstimate e1 = frame_bounds_estimate(rect_lattice(1, q(1, 2)), default_grid(1));
  const FrameBoundsEstimate e2 = frame_bounds_estimate(rect_lattice(1, q(2, 3)), default_grid(1));
  const FrameBoundsEstimate e = frame_bounds_estimate(sep2d_lattice(q(1, 2), q(2, 3)), default_grid(2));
  const double a = e1.A_est * e2.A_est, b = e1.B_est * e2.B_est;
  c.require(e.A_est >= 0.9 * a, "A_est " + fmt(e.A_est) + " < 0.9 * " + fmt(a));
  c.require(e.B_est <= 1.1 * b, "B_est " + fmt(e.B_est) + " > 1.1 * " + fmt(b));
  c.require(e1.converged && e2.converged && e.converged, "estimator did not converge");
  c.note << "A1A2=" << fmt(a) << " A=" << fmt(e.A_est) << " B1B2=" << fmt(b) << " B=" << fmt(e.B_est);
}

void three_dimensional(Check& c) {
  const struct {
    Scalar a, b, c;
    Outcome expected;
  } cases[] = {{q(2, 5), q(2, 5), q(9, 10), Outcome::Frame},
               {q(7, 10), q(7, 10), q(1, 2), Outcome::Incomplete},
               {q(3, 10), q(3, 10), q(6, 5), Outcome::Incomplete},
               {q(1, 2), q(1, 2), q(1), Outcome::CompleteNotFrame}};
  for (const auto& t : cases) {
    const Verdict v = classify(threed_lattice(t.a, t.b, t.c));
    const std::string at = to_string(t.a) + "," + to_string(t.b) + "," + to_string(t.c);
    c.require(v.outcome == t.expected, "outcome at " + at + ": " + std::string(to_string(v.outcome)));
    c.require(v.confidence == Confidence::Exact, "confidence at " + at);
    c.note << at << " " << to_string(v.outcome) << " (" << v.rule() << "); ";
  }
}

void symplectic_transfer(Check& c) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> num(1, 14);
  std::map<std::string, int> seen;
  for (int i = 0; i < 20; ++i) {
    Lattice l = integer_lattice(1);
    switch (i % 5) {
      case 0: l = skew_lattice(q(num(rng), 10), q(num(rng), 10)); break;
      case 1: l = sep2d_lattice(q(num(rng), 10), q(num(rng), 10)); break;
      case 2: l = cor6_lattice(5, q(num(rng), 20), q(num(rng), 10)); break;
      case 3: l = random_generator(rng, 1); break;
      default: l = random_generator(rng, 2); break;
    }
    const Lattice jl = apply_symplectic(l, SymplecticMap::swap(l.dimension())).lattice;
    const Verdict a = classify(l), b = classify(jl);
    c.require(a.outcome == b.outcome && a.confidence == b.confidence, "lattice " + std::to_string(i));
    ++seen[std::string(to_string(a.outcome))];
  }
  for (auto [k, v] : seen) c.note << k << "=" << v << " ";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact densities", 1, exact_densities},
      {2, "separable phase diagram", 1, separable_diagram},
      {3, "skew phase diagram", 5, skew_diagram},
      {4, "splitting characterization", 1, splitting_pattern},
      {5, "certificate-only region for k = 5", 10, corollary_region},
      {6, "Zak zero and factorization", 5, zak_zero},
      {7, "numerical frame-bound regimes", 120, frame_bound_regimes},
      {8, "analytic cross-checks", 30, analytic_checks},
      {9, "tensor frame bounds", 300, tensor_bounds},
      {10, "three-dimensional family", 1, three_dimensional},
      {11, "symplectic transfer", 5, symplectic_transfer},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.require(secs < cr.limit_seconds, "time limit exceeded");
    failed += !c.ok;
    std::printf("criterion %2d %s  %-36s [%.2f s, limit %g s]  %s\n", cr.id, c.ok ? "PASS" : "FAIL", cr.title, secs,
                cr.limit_seconds, c.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
