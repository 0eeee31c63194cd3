#include "covkit/resultant.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/upoly.hpp"

#include <algorithm>
#include <utility>

namespace covkit {

namespace {

using Coeffs = std::vector<MultiPoly>; // index = power of the main variable

int deg(const Coeffs& a) { return static_cast<int>(a.size()) - 1; }

void trim(Coeffs& a)
{
    while (!a.empty() && a.back().is_zero())
        a.pop_back();
}

Coeffs prem(const Coeffs& a, const Coeffs& b)
{
    Coeffs r = a;
    const MultiPoly& lcb = b.back();
    int db = deg(b);
    for (int k = deg(a); k >= db; --k) {
        MultiPoly t = r[static_cast<std::size_t>(k)];
        for (auto& c : r)
            c *= lcb;
        if (!t.is_zero())
            for (int j = 0; j <= db; ++j)
                r[static_cast<std::size_t>(k - db + j)] -= t * b[static_cast<std::size_t>(j)];
        r[static_cast<std::size_t>(k)] = MultiPoly(lcb.vars());
    }
    trim(r);
    return r;
}

MultiPoly power(const MultiPoly& p, int e) { return p.pow(static_cast<unsigned>(e)); }

MultiPoly subresultant(Coeffs A, Coeffs B, const Vars& vars)
{
    MultiPoly g(vars, 1), h(vars, 1);
    Rational s = 1;
    if (deg(A) < deg(B)) {
        std::swap(A, B);
        if ((deg(A) % 2) && (deg(B) % 2))
            s = -1;
    }
    for (;;) {
        int delta = deg(A) - deg(B);
        if ((deg(A) % 2) && (deg(B) % 2))
            s = -s;
        Coeffs R = prem(A, B);
        A = std::move(B);
        MultiPoly divisor = g * power(h, delta);
        B.clear();
        for (const auto& c : R)
            B.push_back(exact_divide(c, divisor));
        g = A.back();
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            h = exact_divide(power(g, delta), power(h, delta - 1));
        }
        if (deg(B) <= 0)
            break;
    }
    if (B.empty())
        return MultiPoly(vars);
    int da = deg(A);
    MultiPoly res = exact_divide(power(B.back(), da), power(h, da - 1));
    return res * s;
}

MultiPoly univariate_gcd(const MultiPoly& a, const MultiPoly& b, std::size_t var)
{
    UPoly g = gcd(to_upoly(a, var), to_upoly(b, var));
    return to_multipoly(g, a.vars().empty() ? b.vars() : a.vars(), var);
}

// Variables in which p has positive degree.
std::vector<std::size_t> support(const MultiPoly& p)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < p.nvars(); ++i)
        if (p.degree(i) > 0)
            out.push_back(i);
    return out;
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b);

MultiPoly content_in(const MultiPoly& p, std::size_t var)
{
    MultiPoly c(p.vars());
    for (const auto& coeff : p.coefficients_in(var)) {
        if (coeff.is_zero())
            continue;
        c = c.is_zero() ? coeff.primitive() : gcd_rec(c, coeff);
        if (c.is_constant())
            return MultiPoly(p.vars(), 1);
    }
    return c;
}

MultiPoly gcd_rec(const MultiPoly& a, const MultiPoly& b)
{
    const Vars& vars = a.vars().empty() ? b.vars() : a.vars();
    if (a.is_zero())
        return b.primitive();
    if (b.is_zero())
        return a.primitive();
    if (a.is_constant() || b.is_constant())
        return MultiPoly(vars, 1);
    auto sa = support(a), sb = support(b);
    std::vector<std::size_t> all;
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(all));
    if (all.size() == 1)
        return univariate_gcd(a, b, all[0]).primitive();
    std::size_t v = all.back();
    if (a.degree(v) == 0)
        return gcd_rec(a, content_in(b, v));
    if (b.degree(v) == 0)
        return gcd_rec(content_in(a, v), b);

    MultiPoly ca = content_in(a, v), cb = content_in(b, v);
    MultiPoly c = gcd_rec(ca, cb);
    MultiPoly A = exact_divide(a, ca), B = exact_divide(b, cb);
    if (A.degree(v) < B.degree(v))
        std::swap(A, B);
    while (!B.is_zero() && B.degree(v) > 0) {
        MultiPoly R = pseudo_remainder(A, B, v);
        A = std::move(B);
        if (R.is_zero()) {
            B = R;
            break;
        }
        B = exact_divide(R, content_in(R, v));
    }
    MultiPoly result = B.is_zero() ? exact_divide(A, content_in(A, v)) : MultiPoly(vars, 1);
    return (c * result).primitive();
}

} // namespace

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t var)
{
    if (b.is_zero())
        throw DivisionError("pseudo-remainder by zero");
    Coeffs ca = a.coefficients_in(var), cb = b.coefficients_in(var);
    if (deg(ca) < deg(cb))
        return a;
    const Vars& vars = a.vars().empty() ? b.vars() : a.vars();
    return MultiPoly::from_coefficients(prem(ca, cb), vars, var);
}

MultiPoly resultant_relaxed(const MultiPoly& f, const MultiPoly& g, std::size_t var)
{
    note(Op::resultant);
    const Vars& vars = f.vars().empty() ? g.vars() : f.vars();
    if (f.is_zero() || g.is_zero())
        return MultiPoly(vars);
    Coeffs A = f.in_context(vars).coefficients_in(var);
    Coeffs B = g.in_context(vars).coefficients_in(var);
    if (deg(A) == 0)
        return power(A[0], deg(B));
    if (deg(B) == 0)
        return power(B[0], deg(A));
    return subresultant(std::move(A), std::move(B), vars);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::size_t var)
{
    note(Op::resultant);
    if (f.is_zero() || g.is_zero())
        throw DegenerateInputError("resultant of a zero polynomial");
    if (var >= std::max(f.nvars(), g.nvars()))
        throw ContextError("resultant: variable index out of range");
    if (f.vars() != g.vars())
        throw ContextError("resultant: mismatched variable contexts");
    if (f.degree(var) <= 0 || g.degree(var) <= 0)
        throw DegenerateInputError("resultant: input of degree zero in the eliminated variable");
    return resultant_relaxed(f, g, var);
}

MultiPoly resultant(const MultiPoly& f, const MultiPoly& g, std::string_view var)
{
    return resultant(f, g, f.index_of(var));
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b)
{
    if (!a.vars().empty() && !b.vars().empty() && a.vars() != b.vars())
        throw ContextError("gcd: mismatched variable contexts");
    return gcd_rec(a, b);
}

} // namespace covkit
