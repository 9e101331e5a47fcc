#include "gaborlab/families.hpp"

#include "gaborlab/error.hpp"

namespace gaborlab {
namespace {

const Scalar& require(const FamilySpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end()) {
    throw Error(ErrorCode::ParseError, "family '" + spec.name + "' needs parameter " + key);
  }
  return it->second;
}

BigInt require_integer(const FamilySpec& spec, const std::string& key) {
  const Scalar& v = require(spec, key);
  if (!is_integral(v) || v < 1) {
    throw Error(ErrorCode::ParseError, "parameter " + key + " must be a positive integer");
  }
  return boost::multiprecision::numerator(v);
}

}  // namespace

Lattice integer_lattice(std::size_t d) { return Lattice(RationalMatrix::identity(2 * d)); }

Lattice rect_lattice(const Scalar& alpha, const Scalar& beta) {
  return Lattice(RationalMatrix(2, 2, {alpha, 0, 0, beta}));
}

Lattice sep2d_lattice(const Scalar& a, const Scalar& b) {
  RationalMatrix g = RationalMatrix::identity(4);
  g(2, 2) = a;
  g(3, 3) = b;
  return Lattice(std::move(g));
}

Lattice skew_lattice(const Scalar& a, const Scalar& b) {
  RationalMatrix g = RationalMatrix::identity(4);
  g(2, 2) = a;
  g(2, 3) = a;
  g(3, 2) = -b;
  g(3, 3) = b;
  return Lattice(std::move(g));
}

Lattice cor6_lattice(const BigInt& k, const Scalar& a, const Scalar& b) {
  RationalMatrix g = RationalMatrix::identity(4);
  g(0, 0) = a * Scalar(k);
  g(0, 1) = a;
  g(1, 1) = b;
  return Lattice(std::move(g));
}

Lattice threed_lattice(const Scalar& a, const Scalar& b, const Scalar& c) {
  RationalMatrix g = RationalMatrix::identity(6);
  g(3, 3) = a;
  g(3, 4) = a;
  g(4, 3) = -b;
  g(4, 4) = b;
  g(5, 5) = c;
  return Lattice(std::move(g));
}

std::vector<std::string> family_parameters(const std::string& name) {
  if (name == "integer") return {"d"};
  if (name == "rect" || name == "sep2d" || name == "sep" || name == "skew") return {"a", "b"};
  if (name == "cor6") return {"k", "a", "b"};
  if (name == "threed") return {"a", "b", "c"};
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + name + "'");
}

Lattice build_family(const FamilySpec& spec) {
  const std::string& name = spec.name;
  if (name == "integer") {
    return integer_lattice(require_integer(spec, "d").convert_to<std::size_t>());
  }
  if (name == "rect") return rect_lattice(require(spec, "a"), require(spec, "b"));
  if (name == "sep2d" || name == "sep") {
    if (spec.params.count("d") && require(spec, "d") != 2) {
      throw Error(ErrorCode::UnknownFamily, "the separable family is only defined for d = 2");
    }
    return sep2d_lattice(require(spec, "a"), require(spec, "b"));
  }
  if (name == "skew") return skew_lattice(require(spec, "a"), require(spec, "b"));
  if (name == "cor6") {
    return cor6_lattice(require_integer(spec, "k"), require(spec, "a"), require(spec, "b"));
  }
  if (name == "threed") {
    return threed_lattice(require(spec, "a"), require(spec, "b"), require(spec, "c"));
  }
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + name + "'");
}

}  // namespace gaborlab
