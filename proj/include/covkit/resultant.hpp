#pragma once

#include "covkit/multipoly.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace covkit {

// Resultant with respect to `var` by the subresultant algorithm.  Both
// inputs must be nonzero with positive degree in var (DegenerateInputError
// otherwise).  The result lives in the same context and does not involve var.
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var);
MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::string_view var);

// As resultant(), but also accepts inputs of degree zero in var
// (Res(f, c) = c^deg f).
MultiPoly resultant_relaxed(const MultiPoly& f, const MultiPoly& g, std::size_t var);

// lc(b)^(deg a - deg b + 1) * a reduced modulo b, with respect to var.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var);

// Greatest common divisor over Q by recursive primitive remainder
// sequences; normalized to integer primitive with positive leading term.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

} // namespace covkit
