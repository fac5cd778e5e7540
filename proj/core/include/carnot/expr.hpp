#ifndef CARNOT_EXPR_HPP
#define CARNOT_EXPR_HPP

#include "carnot/step2.hpp"

namespace carnot {

/// Parse a Lie element written as +/- c*Xw terms joined by + or -,
/// where Xw is a basis label (e.g. X2111) and c a rational like 3/2.
/// "0" denotes the zero element.
LieElement parse_lie_element(const AlgebraPtr& alg, const std::string& text);

/// Parse a step-2 point "v;xi" with v a combination of e1..er and xi a
/// combination of wedges ei^ej, e.g. "e1+2*e3; e1^e2 - 1/2*e3^e4".
Step2Point parse_step2_point(int r, const std::string& text);

}  // namespace carnot

#endif
