#include "gaborlab/lattice_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

#include "gaborlab/error.hpp"

namespace gaborlab {
namespace {

std::vector<std::string> tokens_without_comments(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string w;
    while (words >> w) out.push_back(w);
  }
  return out;
}

}  // namespace

FamilySpec parse_family_shorthand(std::string_view text) {
  auto tokens = tokens_without_comments(text);
  if (tokens.empty()) throw Error(ErrorCode::ParseError, "empty lattice description");
  FamilySpec spec;
  spec.name = tokens[0];
  family_parameters(spec.name);  // rejects unknown names early
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    auto eq = tokens[i].find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::ParseError, "expected key=value, got '" + tokens[i] + "'");
    }
    spec.params[tokens[i].substr(0, eq)] = parse_scalar(tokens[i].substr(eq + 1));
  }
  return spec;
}

Lattice parse_lattice(std::string_view text) {
  auto tokens = tokens_without_comments(text);
  if (tokens.empty()) throw Error(ErrorCode::ParseError, "empty lattice description");
  if (std::isalpha(static_cast<unsigned char>(tokens[0][0]))) {
    return build_family(parse_family_shorthand(text));
  }

  const Scalar d = parse_scalar(tokens[0]);
  if (!is_integral(d) || d < 1 || d > 64) {
    throw Error(ErrorCode::ParseError, "dimension must be a small positive integer");
  }
  const std::size_t n = 2 * boost::multiprecision::numerator(d).convert_to<std::size_t>();
  if (tokens.size() != 1 + n * n) {
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(n * n) + " entries, got " +
                                           std::to_string(tokens.size() - 1));
  }
  RationalMatrix g(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) g(r, c) = parse_scalar(tokens[1 + r * n + c]);
  return Lattice(std::move(g));
}

Lattice read_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_lattice(buf.str());
}

std::string format_lattice(const Lattice& lattice) {
  std::ostringstream out;
  const RationalMatrix& g = lattice.generator();
  out << lattice.dimension() << '\n';
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) out << (c ? " " : "") << to_string(g(r, c));
    out << '\n';
  }
  return out.str();
}

}  // namespace gaborlab
