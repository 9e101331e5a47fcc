#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gaborlab/certificates.hpp"
#include "gaborlab/classifier.hpp"
#include "gaborlab/error.hpp"
#include "gaborlab/families.hpp"
#include "gaborlab/frame_bounds.hpp"
#include "gaborlab/lattice_io.hpp"
#include "gaborlab/signal.hpp"
#include "gaborlab/zak.hpp"

namespace gaborlab::cli {
namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

struct Options {
  std::optional<std::string> family, matrix, out;
  std::optional<std::string> a, b, c, k, d;
  std::optional<std::string> h, T, R, offset, step, tol;
  std::optional<std::string> positive_floor, vanishing_ceiling, ratio;
  std::optional<std::size_t> m, max_iterations, block_size, index_bound;
  bool numeric = false;
  bool two_scale = false;
};

// Numeric settings accept "1e-8" as well as the rational forms.
double real_flag(const std::optional<std::string>& text, double fallback) {
  if (!text) return fallback;
  double v = 0;
  const char* end = text->data() + text->size();
  if (auto [p, ec] = std::from_chars(text->data(), end, v); ec == std::errc() && p == end) return v;
  return to_double(parse_scalar(*text));
}

const std::optional<std::string>& param_flag(const Options& o, const std::string& name) {
  if (name == "a") return o.a;
  if (name == "b") return o.b;
  if (name == "c") return o.c;
  if (name == "k") return o.k;
  return o.d;
}

// Rejects parameter flags the family does not take.
void check_family_flags(const Options& o, const std::vector<std::string>& names) {
  for (const char* p : {"a", "b", "c", "k", "d"}) {
    if (param_flag(o, p) && std::find(names.begin(), names.end(), p) == names.end()) {
      throw Error(ErrorCode::ParseError, "family " + *o.family + " takes no --" + p);
    }
  }
}

Lattice lattice_from(const Options& o, json& params) {
  if (o.family && o.matrix) throw Error(ErrorCode::ParseError, "give either --family or --matrix");
  if (o.matrix) {
    Lattice l = read_lattice_file(*o.matrix);
    params = {{"matrix", *o.matrix}, {"generator", to_json(l.generator())}};
    return l;
  }
  if (!o.family) throw Error(ErrorCode::ParseError, "a lattice needs --family or --matrix");
  const auto names = family_parameters(*o.family);
  check_family_flags(o, names);
  FamilySpec spec{*o.family, {}};
  params = {{"family", *o.family}};
  for (const auto& name : names) {
    if (const auto& v = param_flag(o, name)) {
      spec.params[name] = parse_scalar(*v);
      params[name] = to_string(spec.params[name]);
    }
  }
  return build_family(spec);
}

GridParams grid_from(const Options& o, std::size_t d) {
  GridParams g = default_grid(d);
  g.h = real_flag(o.h, g.h);
  g.T = real_flag(o.T, g.T);
  g.R = real_flag(o.R, g.R);
  return g;
}

EstimatorConfig estimator_from(const Options& o) {
  EstimatorConfig cfg;
  cfg.tol = real_flag(o.tol, cfg.tol);
  if (o.max_iterations) cfg.max_iterations = *o.max_iterations;
  if (o.block_size) cfg.block_size = *o.block_size;
  return cfg;
}

TwoScaleThresholds thresholds_from(const Options& o) {
  TwoScaleThresholds t;
  t.positive_floor = real_flag(o.positive_floor, t.positive_floor);
  t.vanishing_ceiling = real_flag(o.vanishing_ceiling, t.vanishing_ceiling);
  t.ratio = real_flag(o.ratio, t.ratio);
  return t;
}

AnalysisConfig analysis_from(const Options& o, std::size_t d) {
  AnalysisConfig cfg;
  if (o.index_bound) {
    if (*o.index_bound < 1) throw Error(ErrorCode::BadRange, "--index-bound must be at least 1");
    cfg.index_bound = *o.index_bound;
  }
  cfg.numeric_fallback = o.numeric;
  if (o.h || o.T || o.R) cfg.grid = grid_from(o, d);
  cfg.estimator = estimator_from(o);
  cfg.thresholds = thresholds_from(o);
  return cfg;
}

void emit(std::ostream& out, json payload) {
  payload["schema"] = 1;
  out << payload.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

int cmd_density(const Options& o, std::ostream& out) {
  json params;
  const Lattice l = lattice_from(o, params);
  const Scalar dens = lattice_density(l);
  emit(out, {{"density", to_string(dens)}, {"approx", to_double(dens)}, {"params", params}});
  return kOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  json params;
  const Lattice l = lattice_from(o, params);
  json j = to_json(classify(l, analysis_from(o, l.dimension())));
  j["params"] = params;
  j["density"] = to_string(lattice_density(l));
  emit(out, j);
  return kOk;
}

int cmd_certify(const Options& o, std::ostream& out) {
  json params;
  const Lattice l = lattice_from(o, params);
  const BigInt bound = o.index_bound ? BigInt(*o.index_bound) : BigInt(4);
  if (bound < 1) throw Error(ErrorCode::BadRange, "--index-bound must be at least 1");
  json j{{"params", params}, {"density", to_string(lattice_density(l))}, {"index_bound", to_string(bound)}};
  const auto inc = find_incompleteness_certificate(l, bound);
  j["incompleteness"] = inc ? to_json(*inc) : json(nullptr);
  const auto frame = certify_frame_by_sublattice(l, bound);
  j["frame_sublattice"] = frame ? to_json(*frame) : json(nullptr);
  const auto crit = find_critical_certificate(l, bound);
  j["critical"] = crit ? to_json(*crit) : json(nullptr);
  emit(out, j);
  return kOk;
}

std::size_t dimension_flag(const Options& o, std::size_t lo, std::size_t hi) {
  if (!o.d) return 1;
  const Scalar v = parse_scalar(*o.d);
  if (!is_integral(v) || v < 1) throw Error(ErrorCode::ParseError, "--d must be a positive integer");
  if (v > hi || v < lo) {
    throw Error(ErrorCode::UnsupportedDimension, "--d must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return boost::multiprecision::numerator(v).convert_to<std::size_t>();
}

int cmd_zak_scan(const Options& o, std::ostream& out) {
  if (o.family || o.matrix) throw Error(ErrorCode::ParseError, "zak-scan works on the integer lattice; use --d");
  const GaussianWindow g{dimension_flag(o, 1, 3)};
  const std::size_t m = o.m.value_or(64);
  const double offset = real_flag(o.offset, 0);
  const ZakScan scan = zak_min_scan(g, m, offset);
  if (!o.out) {
    write_zak_csv(out, g, m, offset);
    return kOk;
  }
  auto file = open_output(*o.out);
  write_zak_csv(file, g, m, offset);
  emit(out, {{"d", scan.d},
             {"m", scan.m},
             {"offset", scan.offset},
             {"min_modulus", scan.min_modulus},
             {"max_modulus", scan.max_modulus},
             {"argmin", scan.argmin},
             {"A", scan.min_modulus * scan.min_modulus},
             {"B", scan.max_modulus * scan.max_modulus},
             {"out", *o.out}});
  return kOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  json params;
  const Lattice l = lattice_from(o, params);
  const GridParams grid = grid_from(o, l.dimension());
  json j = o.two_scale ? to_json(two_scale_test(l, grid, thresholds_from(o), estimator_from(o)))
                       : to_json(frame_bounds_estimate(l, grid, estimator_from(o)));
  j["params"] = params;
  emit(out, j);
  return kOk;
}

// "lo:hi", "lo:hi:step" or a single value.
std::vector<Scalar> parse_axis(const std::string& text, const std::optional<std::string>& step) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string p; std::getline(in, p, ':');) parts.push_back(p);
  if (parts.size() == 1) return {parse_scalar(parts[0])};
  if (parts.size() > 3) throw Error(ErrorCode::ParseError, "bad range '" + text + "'");
  const Scalar lo = parse_scalar(parts[0]), hi = parse_scalar(parts[1]);
  if (parts.size() == 3) return scalar_range(lo, hi, parse_scalar(parts[2]));
  if (!step) {
    if (lo == hi) return {lo};
    throw Error(ErrorCode::ParseError, "range '" + text + "' needs --step");
  }
  return scalar_range(lo, hi, parse_scalar(*step));
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (!o.family) throw Error(ErrorCode::ParseError, "sweep needs --family");
  if (o.matrix) throw Error(ErrorCode::ParseError, "sweep takes a family, not --matrix");
  const auto names = family_parameters(*o.family);
  check_family_flags(o, names);
  std::vector<ParameterAxis> axes;
  for (const auto& name : names) {
    const auto& v = param_flag(o, name);
    if (!v) throw Error(ErrorCode::ParseError, "sweep needs --" + name);
    axes.push_back({name, parse_axis(*v, o.step)});
  }
  FamilySpec first{*o.family, {}};
  for (const auto& ax : axes) first.params[ax.name] = ax.values.front();
  const Lattice probe = build_family(first);
  const auto cells = phase_diagram(*o.family, axes, analysis_from(o, probe.dimension()));
  if (!o.out) {
    write_phase_csv(out, axes, cells);
    return kOk;
  }
  auto file = open_output(*o.out);
  write_phase_csv(file, axes, cells);
  json counts = json::object();
  for (const auto& cell : cells) {
    auto key = std::string(to_string(cell.verdict.outcome));
    counts[key] = counts.value(key, 0) + 1;
  }
  emit(out, {{"family", *o.family}, {"rows", cells.size()}, {"outcomes", counts}, {"out", *o.out}});
  return kOk;
}

// A non-Gaussian test function: a shifted, chirped Gaussian times a polynomial.
Complex bumpy(double t) {
  return (1.0 + 0.5 * t - 0.2 * t * t) * std::exp(-kPi * (t - 0.4) * (t - 0.4)) *
         std::polar(1.0, 2 * kPi * 0.3 * t + 0.7 * t * t);
}

struct Check {
  std::string name;
  double tolerance = 0;
  double error = std::numeric_limits<double>::quiet_NaN();
  std::string failure;
  bool passed() const { return failure.empty() && error <= tolerance; }
};

template <class F>
Check run_check(const std::string& name, double tolerance, F&& measure) {
  Check c;
  c.name = name;
  c.tolerance = tolerance;
  try {
    c.error = measure();
  } catch (const Error& e) {
    c.failure = e.what();
  }
  return c;
}

int cmd_relation_check(const Options& o, std::ostream& out) {
  if (o.family || o.matrix) throw Error(ErrorCode::ParseError, "relation-check takes no lattice");
  const std::size_t d = dimension_flag(o, 1, 2);
  const GridParams grid = grid_from(o, d);
  const GaussianWindow w1{1};
  const SampledSignal f = SampledSignal::from_function(1, grid.h, grid.T, [](auto t) { return bumpy(t[0]); });
  const SampledSignal g = SampledSignal::from_window(w1, grid.h, grid.T);

  std::vector<Check> checks;
  checks.push_back(run_check("stft-unitarity", 1e-5, [&] {
    // frequencies beyond 1/(2h) alias on the sample grid
    const double wmax = std::min(7.0, 0.5 / grid.h), step = 0.25;
    double energy = 0;
    for (double x = -7; x <= 7 + 1e-9; x += step)
      for (double om = -wmax; om <= wmax + 1e-9; om += step) energy += std::norm(stft_point(f, w1, {{x}, {om}}));
    return std::abs(energy * step * step - f.norm_squared()) / f.norm_squared();
  }));
  checks.push_back(run_check("gaussian-stft-modulus", 1e-5, [&] {
    double worst = 0;
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        const double x = 0.6 * i, om = 0.7 * j;
        worst = std::max(worst, std::abs(std::abs(stft_point(g, w1, {{x}, {om}})) - std::exp(-kPi * (x * x + om * om) / 2)));
      }
    return worst;
  }));
  checks.push_back(run_check("bargmann-modulus", 1e-5, [&] {
    double worst = 0;
    for (double x : {-0.8, 0.0, 0.9})
      for (double xi : {-0.6, 0.0, 0.7}) {
        const Complex z[] = {Complex(x, xi)};
        const double damp = std::exp(-kPi * std::norm(z[0]) / 2);
        const double lhs = std::abs(stft_point(f, w1, {{x}, {-xi}}));
        worst = std::max(worst, std::abs(lhs - std::abs(bargmann_point(f, z)) * damp));
      }
    return worst / std::sqrt(f.norm_squared());
  }));
  checks.push_back(run_check("zak-quasi-periodicity", 1e-10, [&] {
    const double x0 = grid.h * std::round(0.25 / grid.h), om = 0.3;
    const double a[] = {x0}, b[] = {x0 + 1}, w[] = {om}, w1p[] = {om + 1};
    const Complex z = zak_point(f, a, w);
    double worst = std::abs(zak_point(f, b, w) - std::polar(1.0, 2 * kPi * om) * z) / std::abs(z);
    worst = std::max(worst, std::abs(zak_point(f, a, w1p) - z) / std::abs(z));
    const Complex zg = zak_point(w1, a, w);
    worst = std::max(worst, std::abs(zak_point(w1, b, w) - std::polar(1.0, 2 * kPi * om) * zg) / std::abs(zg));
    return worst;
  }));
  if (d == 2) {
    checks.push_back(run_check("tensor-factorization", 1e-8, [&] {
      const SampledSignal f2 = SampledSignal::from_function(2, grid.h, grid.T, [](std::span<const double> t) {
        return bumpy(t[0]) * bumpy(-0.5 * t[1]);
      });
      const SampledSignal fb = SampledSignal::from_function(1, grid.h, grid.T, [](auto t) { return bumpy(-0.5 * t[0]); });
      double worst = 0;
      for (auto [x1, x2, v1, v2] : {std::array{0.3, -0.2, 0.5, 1.1}, std::array{-1.0, 0.7, -0.4, 0.0}}) {
        const Complex joint = stft_point(f2, GaussianWindow{2}, {{x1, x2}, {v1, v2}});
        const Complex split = stft_point(f, w1, {{x1}, {v1}}) * stft_point(fb, w1, {{x2}, {v2}});
        worst = std::max(worst, std::abs(joint - split));
      }
      return worst;
    }));
  }

  bool all = true;
  json list = json::array();
  for (const auto& c : checks) {
    json item{{"name", c.name}, {"passed", c.passed()}, {"tolerance", c.tolerance}};
    item["error"] = std::isnan(c.error) ? json(nullptr) : json(c.error);
    if (!c.failure.empty()) item["failure"] = c.failure;
    list.push_back(item);
    all = all && c.passed();
  }
  emit(out, {{"d", d}, {"h", grid.h}, {"T", grid.T}, {"checks", list}, {"passed", all}});
  return all ? kOk : kRelationFailed;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::BadRange:
    case ErrorCode::UnknownFamily:
    case ErrorCode::NonPositive:
    case ErrorCode::OddDimension:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NotSymplectic:
      return kBadInput;
    case ErrorCode::SingularGenerator:
      return kSingular;
    case ErrorCode::UnsupportedDimension:
      return kUnsupported;
    default:
      return kFailure;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spanning properties of Gaussian Gabor systems on lattices", "gaborlab"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  app.fallthrough();
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");

  Options o;
  app.add_option("--family", o.family, "integer, rect, sep2d, skew, cor6 or threed");
  app.add_option("--matrix", o.matrix, "lattice file: d, then 2d rows of 2d rationals");
  app.add_option("--a", o.a, "family parameter (rational, or lo:hi[:step] for sweep)");
  app.add_option("--b", o.b, "family parameter");
  app.add_option("--c", o.c, "family parameter");
  app.add_option("--k", o.k, "family parameter");
  app.add_option("--d", o.d, "dimension");
  app.add_option("--h", o.h, "sample step");
  app.add_option("--T", o.T, "sample support [-T, T]");
  app.add_option("--R", o.R, "truncation radius");
  app.add_option("--tol", o.tol, "estimator tolerance");
  app.add_option("--max-iterations", o.max_iterations, "estimator iteration cap");
  app.add_option("--block-size", o.block_size, "estimator block size");
  app.add_option("--positive-floor", o.positive_floor, "two-scale: A above this counts as positive");
  app.add_option("--vanishing-ceiling", o.vanishing_ceiling, "two-scale: A below this counts as vanishing");
  app.add_option("--ratio", o.ratio, "two-scale: ratio threshold");
  app.add_option("--index-bound", o.index_bound, "largest sublattice index searched for certificates");
  app.add_option("--m", o.m, "Zak grid points per axis");
  app.add_option("--offset", o.offset, "Zak grid offset, in grid steps");
  app.add_option("--step", o.step, "sweep step");
  app.add_option("--out", o.out, "CSV output path");
  app.add_flag("--numeric", o.numeric, "allow numeric frame-bound evidence");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&, std::ostream&);
  };
  const Sub subs[] = {
      {"density", "exact lattice density", cmd_density},
      {"classify", "frame / complete / incomplete verdict with evidence", cmd_classify},
      {"certify", "algebraic certificates", cmd_certify},
      {"zak-scan", "|Zg| on a grid of the unit cube", cmd_zak_scan},
      {"bounds", "numerical frame bound estimates", cmd_bounds},
      {"sweep", "phase diagram CSV over a parameter grid", cmd_sweep},
      {"relation-check", "STFT, Bargmann, Zak and tensor identities", cmd_relation_check},
  };
  std::vector<CLI::App*> commands;
  for (const auto& s : subs) commands.push_back(app.add_subcommand(s.name, s.help));
  commands[4]->add_flag("--two-scale", o.two_scale, "run the coarse/fine lower-bound test");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kBadInput;
  }

  try {
    for (std::size_t i = 0; i < commands.size(); ++i)
      if (commands[i]->parsed()) return subs[i].run(o, out);
    return kBadInput;
  } catch (const Error& e) {
    err << "gaborlab: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "gaborlab: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace gaborlab::cli
