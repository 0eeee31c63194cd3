#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/resultant.hpp"
#include "germ.hpp"

#include <algorithm>

namespace covkit {

namespace {

// Smallest a = 0, 1, -1, 2, ... with every form of full y-degree on the
// lines (b + a*s, s, 1), i.e. F(a, 1, 0) != 0.
Rational good_slope(const std::vector<const MultiPoly*>& forms)
{
    for (int k = 0; k < 200; ++k) {
        Rational a = (k % 2) ? Rational(-(k + 1) / 2) : Rational(k / 2);
        bool ok = true;
        for (auto* f : forms)
            ok = ok && f->evaluate({a, 1, 0}) != 0;
        if (ok)
            return a;
    }
    throw UnsupportedError("no admissible slope found");
}

// F = z^k * F' with z not dividing F'.
std::pair<int, MultiPoly> strip_z(const MultiPoly& F)
{
    int k = F.total_degree();
    for (const auto& [e, c] : F.terms())
        k = std::min(k, e[2]);
    MultiPoly out(plane_vars());
    for (const auto& [e, c] : F.terms()) {
        Exponent f = e;
        f[2] -= k;
        out.add_term(f, c);
    }
    return {k, out};
}

} // namespace

// Restricting to a line along which the form keeps its degree preserves a
// square factor, so a squarefree restriction proves squarefreeness; the
// discriminant argument bounds the number of lines to try.
bool is_squarefree(const PlaneCurve& c)
{
    auto [k, F] = strip_z(c.form());
    int d = F.total_degree();
    if (k > 1)
        return false;
    if (d <= 1)
        return true;
    Rational a = good_slope({&F});
    for (int b = 0; b <= d * (d - 1); ++b) {
        UPoly r = detail::restrict_to_line(F, a, b);
        if (covkit::is_squarefree(r))
            return true;
    }
    return false;
}

bool is_coprime(const PlaneCurve& A, const PlaneCurve& B)
{
    auto [ka, F] = strip_z(A.form());
    auto [kb, G] = strip_z(B.form());
    if (ka > 0 && kb > 0)
        return false;
    int df = F.total_degree(), dg = G.total_degree();
    if (df == 0 || dg == 0)
        return true;
    Rational a = good_slope({&F, &G});
    for (int b = 0; b <= df * dg; ++b) {
        UPoly f = detail::restrict_to_line(F, a, b), g = detail::restrict_to_line(G, a, b);
        if (gcd(f, g).degree() == 0)
            return true;
    }
    return false;
}

} // namespace covkit
