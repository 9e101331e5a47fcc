#pragma once

#include <string>
#include <string_view>

#include "gaborlab/families.hpp"
#include "gaborlab/lattice.hpp"

namespace gaborlab {

// Reads either the matrix format (d on the first line, then 2d rows of 2d
// rational literals; '#' starts a comment) or a family shorthand such as
// "skew a=1/2 b=0.7" or "cor6 k=5 a=0.3 b=0.9".
// Throws ParseError, OddDimension, SingularGenerator, UnknownFamily.
Lattice parse_lattice(std::string_view text);

FamilySpec parse_family_shorthand(std::string_view text);

Lattice read_lattice_file(const std::string& path);

// Inverse of the matrix format.
std::string format_lattice(const Lattice& lattice);

}  // namespace gaborlab
