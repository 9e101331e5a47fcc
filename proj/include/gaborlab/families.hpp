#pragma once

#include <map>
#include <string>
#include <vector>

#include "gaborlab/lattice.hpp"

namespace gaborlab {

// Z^{2d}
Lattice integer_lattice(std::size_t d);

// alpha Z x beta Z in the time-frequency plane (d = 1).
Lattice rect_lattice(const Scalar& alpha, const Scalar& beta);

// Z^2 x diag(a, b) Z^2
Lattice sep2d_lattice(const Scalar& a, const Scalar& b);

// Z^2 x [[a, a], [-b, b]] Z^2
Lattice skew_lattice(const Scalar& a, const Scalar& b);

// [[ak, a], [0, b]] Z^2 x Z^2
Lattice cor6_lattice(const BigInt& k, const Scalar& a, const Scalar& b);

// Z^3 x [[a, a, 0], [-b, b, 0], [0, 0, c]] Z^3
Lattice threed_lattice(const Scalar& a, const Scalar& b, const Scalar& c);

// A named family with its parameters, e.g. {"skew", {{"a", 1/2}, {"b", 1/2}}}.
struct FamilySpec {
  std::string name;
  std::map<std::string, Scalar> params;
};

// Family names: integer (d), rect (a, b), sep2d (a, b), skew (a, b),
// cor6 (k, a, b), threed (a, b, c). "sep" is accepted for sep2d when d = 2.
// Throws UnknownFamily, or ParseError for a missing or malformed parameter.
Lattice build_family(const FamilySpec& spec);

// Parameter names of a family in display order; throws UnknownFamily.
std::vector<std::string> family_parameters(const std::string& name);

}  // namespace gaborlab
