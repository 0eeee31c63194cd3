#pragma once

#include "covkit/curves.hpp"
#include "covkit/upoly.hpp"

#include <vector>

namespace covkit::detail {

// Blow up the origin of a germ (first two variables are the local
// coordinates, any further variables are parameters) and move to the chart
// centered at the point of direction d.  The exceptional curve is x = 0 in
// the new chart.  Terms of order below m in x are discarded and the rest
// divided by x^m.
MultiPoly blow_up_germ(const MultiPoly& g, const Direction& d, int m);

// Linear factors of a binary form (in the first two variables).
struct ConeFactor {
    bool rational = true;
    Direction direction;
    UPoly slope_poly; // irreducible, in s where direction = (1, s)
    int exponent = 0;
};

std::vector<ConeFactor> cone_factors(const MultiPoly& cone);

// Direction of a line through the origin a*x + b*y.
Direction line_direction(const MultiPoly& line);

// Univariate restriction of a form to (b + a*s, s, 1).
UPoly restrict_to_line(const MultiPoly& form, const Rational& a, const Rational& b);

} // namespace covkit::detail
