#pragma once

#include "covkit/multipoly.hpp"
#include "covkit/upoly.hpp"

#include <utility>
#include <vector>

namespace covkit {

struct Factorization {
    // f = content * prod(factor^exponent); every factor is irreducible over
    // Q, integer primitive, with positive leading coefficient.
    Rational content = 0;
    std::vector<std::pair<UPoly, int>> factors;

    UPoly expand() const;
};

// Squarefree decomposition over Q followed by modular factorization, Hensel
// lifting and recombination of every squarefree part.  Factors are sorted
// by degree, then by coefficients.
Factorization uni_factor(const UPoly& f);
Factorization uni_factor(const MultiPoly& f);

bool is_irreducible(const UPoly& f);

} // namespace covkit
