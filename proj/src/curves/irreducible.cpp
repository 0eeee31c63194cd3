#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/linalg.hpp"

#include <map>
#include <utility>

namespace covkit {

// Nullity of  f*g_y - g*f_y - f*h_x + h*f_x = 0  over deg g <= (m-1, n),
// deg h <= (m, n-1) counts the absolutely irreducible factors of f when
// gcd(f, f_x) = 1.  A linear change of coordinates making the x^d
// coefficient nonzero guarantees that for a squarefree form.
int absolute_factor_count(const PlaneCurve& c)
{
    note(Op::absolute_factor_count);
    if (!is_squarefree(c))
        throw NonReducedError("absolute_factor_count needs a squarefree form");
    const MultiPoly& F = c.form();
    int d = c.degree();
    if (d == 0)
        throw DegenerateInputError("constant form");
    if (d == 1)
        return 1;
    Rational lam = 0, mu = 0;
    bool found = false;
    for (int s = 0; s < 20 && !found; ++s)
        for (int a = 0; a <= s && !found; ++a) {
            lam = a;
            mu = s - a;
            found = F.evaluate({1, lam, mu}) != 0;
        }
    if (!found)
        throw UnsupportedError("no coordinate change found");
    const Vars& L = local_vars();
    MultiPoly X = MultiPoly::variable(L, 0), Y = MultiPoly::variable(L, 1);
    MultiPoly f = F.compose({X, Y + X * lam, MultiPoly(L, 1) + X * mu});
    int m = f.degree(0), n = f.degree(1);
    if (n == 0)
        return m; // product of distinct lines through one point
    MultiPoly fx = f.derivative(0), fy = f.derivative(1);

    std::vector<MultiPoly> columns;
    for (int i = 0; i <= m - 1; ++i)
        for (int j = 0; j <= n; ++j) {
            MultiPoly g = MultiPoly::term(L, {i, j}, 1);
            columns.push_back(f * g.derivative(1) - g * fy);
        }
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n - 1; ++j) {
            MultiPoly h = MultiPoly::term(L, {i, j}, 1);
            columns.push_back(h * fx - f * h.derivative(0));
        }
    std::map<Exponent, std::size_t> row_of;
    for (const auto& col : columns)
        for (const auto& [e, v] : col.terms())
            row_of.emplace(e, 0);
    std::size_t r = 0;
    for (auto& [e, idx] : row_of)
        idx = r++;
    Matrix M(row_of.size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& [e, v] : columns[j].terms())
            M(row_of[e], j) = v;
    return static_cast<int>(columns.size() - rank(M));
}

} // namespace covkit
