#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/linalg.hpp"
#include "germ.hpp"

namespace covkit {

namespace {

std::vector<Exponent> monomials(int d)
{
    std::vector<Exponent> out;
    for (int i = d; i >= 0; --i)
        for (int j = d - i; j >= 0; --j)
            out.push_back({i, j, d - i - j});
    return out;
}

} // namespace

// A condition is linear in the coefficients: the germ of every monomial is
// carried through the same chain of chart substitutions, and the rows are
// the Taylor coefficients of order below the imposed multiplicity.  Terms
// dropped when dividing by the exceptional coordinate are exactly those
// already forced to vanish.
std::vector<MultiPoly> linear_system(int degree, const std::vector<SingularityCondition>& conditions)
{
    note(Op::linear_system);
    if (degree < 0)
        throw ConditionError("negative degree");
    auto mons = monomials(degree);
    Matrix rows(0, mons.size());
    for (const auto& cond : conditions) {
        const auto& m = cond.multiplicities;
        if (m.empty())
            continue;
        if (cond.directions.size() + 1 < m.size())
            throw ConditionError("condition at " + to_string(cond.point) + " needs " +
                                 std::to_string(m.size() - 1) + " tangent directions");
        for (int v : m)
            if (v < 0)
                throw ConditionError("negative multiplicity");
        std::vector<MultiPoly> germs;
        for (const auto& e : mons)
            germs.push_back(local_germ(MultiPoly::term(plane_vars(), e, 1), cond.point));
        for (std::size_t k = 0; k < m.size(); ++k) {
            for (int a = 0; a < m[k]; ++a)
                for (int b = 0; a + b < m[k]; ++b) {
                    std::vector<Rational> row;
                    bool nonzero = false;
                    for (const auto& g : germs) {
                        row.push_back(g.coeff({a, b}));
                        nonzero = nonzero || row.back() != 0;
                    }
                    if (nonzero)
                        rows.append_row(row);
                }
            if (k + 1 < m.size())
                for (auto& g : germs)
                    g = detail::blow_up_germ(g, cond.directions[k], m[k]);
        }
    }
    std::vector<MultiPoly> basis;
    if (rows.rows() == 0) {
        for (const auto& e : mons)
            basis.push_back(MultiPoly::term(plane_vars(), e, 1));
        return basis;
    }
    for (const auto& v : nullspace(rows)) {
        MultiPoly f(plane_vars());
        for (std::size_t i = 0; i < mons.size(); ++i)
            f.add_term(mons[i], v[i]);
        basis.push_back(canonical(f));
    }
    return basis;
}

} // namespace covkit
