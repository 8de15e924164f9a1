// Line-oriented file formats (surface, link, state, curve, shear) and the
// canonical text forms of polynomials.
#pragma once

#include "qtrace/classical.hpp"
#include "qtrace/state_sum.hpp"

#include <iosfwd>
#include <string>

namespace qtrace {

// `triangles <m>` then `edge <name> <j>.<a> <j'>.<a'>` or `edge <name> <j>.<a> @boundary`;
// slots 1-based, clockwise; `#` comments.
IdealTriangulation parse_surface(std::istream& in, const std::string& filename);
IdealTriangulation load_surface(const std::string& path);

// `arc <face> <slot_in> <slot_out> <elev>` and `tangle <edge> <word tokens>`;
// omitted edges default to identity words.
GoodPositionLink parse_link(std::istream& in, const std::string& filename,
                            std::shared_ptr<const IdealTriangulation> tri);
GoodPositionLink load_link(const std::string& path, std::shared_ptr<const IdealTriangulation> tri);

// `state <edge> <index-from-bottom> <+|->`
BoundaryState parse_state(std::istream& in, const std::string& filename,
                          const IdealTriangulation& tri);
BoundaryState load_state(const std::string& path, const IdealTriangulation& tri);

// `step <edge> <L|R|U> <t>`
std::vector<TurnStep> parse_curve(std::istream& in, const std::string& filename,
                                  const IdealTriangulation& tri);
std::vector<TurnStep> load_curve(const std::string& path, const IdealTriangulation& tri);

// `shear <edge> <positive decimal>`; returns one value per edge
std::vector<double> parse_shear(std::istream& in, const std::string& filename,
                                const IdealTriangulation& tri);
std::vector<double> load_shear(const std::string& path, const IdealTriangulation& tri);

// Canonical text of a trace polynomial: terms sorted lexicographically by
// exponent vector, each `(<omega-poly>) * [Z1^a Z2^b ...]` with the
// Weyl-basis coefficient; zero exponents omitted, `[1]` for the constant
// monomial, `0` for the zero element.
std::string qt_str(const QTElement& x);
QTElement qt_parse(const std::string& text, std::shared_ptr<const CommutationMatrix> comm);

std::string state_str(const IdealTriangulation& tri, const BoundaryState& s);

}  // namespace qtrace
