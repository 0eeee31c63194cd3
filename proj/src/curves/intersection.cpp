#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/resultant.hpp"
#include "germ.hpp"

namespace covkit {

namespace {

void check_no_common_component(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p)
{
    if (is_coprime(c, d))
        return;
    MultiPoly g = gcd(c.form(), d.form());
    if (g.evaluate(p.coords()) == 0)
        throw InfiniteMultiplicityError("common component " + to_string(g) + " through " + to_string(p));
}

int blowup_rec(const MultiPoly& f, const MultiPoly& g, int depth)
{
    int mf = f.order(), mg = g.order();
    if (mf == 0 || mg == 0)
        return 0;
    if (depth > 200)
        throw InfiniteMultiplicityError("blow-up recursion did not separate the germs");
    int total = mf * mg;
    auto ff = detail::cone_factors(f.lowest_part());
    auto gf = detail::cone_factors(g.lowest_part());
    for (const auto& a : ff)
        for (const auto& b : gf) {
            if (a.rational != b.rational)
                continue;
            if (!a.rational) {
                if (a.slope_poly == b.slope_poly)
                    throw UnsupportedError("common tangent defined over a number field");
                continue;
            }
            if (a.direction == b.direction)
                total += blowup_rec(detail::blow_up_germ(f, a.direction, mf), detail::blow_up_germ(g, b.direction, mg),
                                    depth + 1);
        }
    return total;
}

int ord0(const UPoly& r)
{
    int k = 0;
    while (r[k] == 0)
        ++k;
    return k;
}

} // namespace

int intersection_multiplicity_blowup(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p)
{
    if (!c.contains(p) || !d.contains(p))
        return 0;
    check_no_common_component(c, d, p);
    return blowup_rec(local_germ(c.form(), p), local_germ(d.form(), p), 0);
}

// After a shear x -> x + l*y that keeps both leading y-coefficients nonzero at
// x = 0 and leaves the origin as the only common point on the line x = 0,
// the x-adic valuation of Res_y is the local intersection number.
int intersection_multiplicity_resultant(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p)
{
    if (!c.contains(p) || !d.contains(p))
        return 0;
    check_no_common_component(c, d, p);
    MultiPoly F = c.form(), G = d.form();
    if (!is_coprime(c, d)) {
        // the shared part misses p; drop it so the resultant is nonzero
        MultiPoly h = gcd(F, G);
        F = exact_divide(F, h);
        G = exact_divide(G, h);
    }
    const Vars& L = local_vars();
    MultiPoly f0 = local_germ(F, p), g0 = local_germ(G, p);
    MultiPoly X = MultiPoly::variable(L, 0), Y = MultiPoly::variable(L, 1);
    for (int l = 0; l < 100; ++l) {
        MultiPoly f = f0.compose({X + Y * Rational(l), Y}), g = g0.compose({X + Y * Rational(l), Y});
        if (f.degree(1) < 1 || g.degree(1) < 1)
            continue;
        UPoly lf = to_upoly(f.coefficients_in(1).back(), 0), lg = to_upoly(g.coefficients_in(1).back(), 0);
        if (lf.evaluate(0) == 0 || lg.evaluate(0) == 0)
            continue;
        UPoly a = to_upoly(f.substitute(0, MultiPoly(L, 0)), 1), b = to_upoly(g.substitute(0, MultiPoly(L, 0)), 1);
        if (a.is_zero() || b.is_zero())
            continue;
        UPoly h = gcd(a, b);
        if (h != UPoly::monomial(h.degree()))
            continue;
        MultiPoly r = resultant(f, g, 1);
        if (r.is_zero())
            throw InfiniteMultiplicityError("common component through " + to_string(p));
        return ord0(to_upoly(r, 0));
    }
    throw UnsupportedError("no admissible shear for the resultant method");
}

int intersection_multiplicity(const PlaneCurve& c, const PlaneCurve& d, const PlanePoint& p)
{
    note(Op::intersection_multiplicity);
    int a = intersection_multiplicity_blowup(c, d, p);
    int b = intersection_multiplicity_resultant(c, d, p);
    if (a != b)
        throw IntegrityError("intersection number at " + to_string(p) + ": blow-up gives " + std::to_string(a) +
                             ", resultant gives " + std::to_string(b));
    return a;
}

} // namespace covkit
