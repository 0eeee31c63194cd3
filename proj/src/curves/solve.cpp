#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/factor.hpp"
#include "covkit/resultant.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace covkit {

std::size_t SolutionSet::size() const
{
    std::size_t n = points.size();
    for (const auto& c : components)
        n += static_cast<std::size_t>(c.degree());
    return n;
}

bool SolutionSet::contains(const PlanePoint& p) const { return std::find(points.begin(), points.end(), p) != points.end(); }

std::string to_string(const SolutionSet& s)
{
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.points.size(); ++i)
        os << (i ? ", " : "") << to_string(s.points[i]);
    os << "}";
    for (const auto& c : s.components) {
        os << " + [" << to_string(c.field->modulus(), "t") << ": (";
        for (std::size_t i = 0; i < c.coords.size(); ++i)
            os << (i ? ":" : "") << to_string(c.coords[i]);
        os << ")]";
    }
    return os.str();
}

namespace {

QuotientElement evaluate_in(const MultiPoly& F, const std::vector<QuotientElement>& at)
{
    const FieldPtr& K = at[0].field();
    QuotientElement acc(K, Rational(0));
    for (const auto& [e, c] : F.terms()) {
        QuotientElement t(K, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= at[i];
        acc += t;
    }
    return acc;
}

// Coefficients in y of f(x, y) as polynomials in x.
std::vector<UPoly> y_coefficients(const MultiPoly& f)
{
    std::vector<UPoly> out;
    for (const auto& c : f.coefficients_in(1))
        out.push_back(to_upoly(c, 0));
    return out;
}

UPoly specialize(const std::vector<UPoly>& coeffs, const Rational& x)
{
    std::vector<Rational> c;
    for (const auto& p : coeffs)
        c.push_back(p.evaluate(x));
    return UPoly(c);
}

// The root r when g = (y - r)^k, g monic.
std::optional<Rational> single_root(const UPoly& g)
{
    int k = g.degree();
    Rational r = -g[k - 1] / k;
    UPoly lin(std::vector<Rational>{-r, 1}), pw(Rational(1));
    for (int i = 0; i < k; ++i)
        pw = pw * lin;
    if (pw != g)
        return std::nullopt;
    return r;
}

std::optional<QuotientElement> single_root(const FieldPoly& g)
{
    const FieldPtr& K = g[0].field();
    int k = static_cast<int>(g.size()) - 1;
    QuotientElement r = -g[static_cast<std::size_t>(k - 1)] * QuotientElement(K, Rational(1, k));
    FieldPoly pw{QuotientElement(K, Rational(1))};
    for (int i = 0; i < k; ++i) {
        FieldPoly next(pw.size() + 1, QuotientElement(K, Rational(0)));
        for (std::size_t j = 0; j < pw.size(); ++j) {
            next[j + 1] += pw[j];
            next[j] -= pw[j] * r;
        }
        pw = std::move(next);
    }
    if (pw != g)
        return std::nullopt;
    return r;
}

struct Affine {
    std::vector<PlanePoint> points;
    std::vector<ExtensionComponent> components;
};

// Common affine points after the shear x -> x + l*y, or nothing when some
// fiber holds more than one distinct point.
std::optional<Affine> solve_affine(const std::vector<MultiPoly>& fs, int l)
{
    const Vars& L = local_vars();
    MultiPoly X = MultiPoly::variable(L, 0), Y = MultiPoly::variable(L, 1);
    std::vector<MultiPoly> sheared;
    for (const auto& f : fs) {
        MultiPoly s = f.compose({X + Y * Rational(l), Y});
        // leading y-coefficient must be a nonzero constant
        auto co = s.coefficients_in(1);
        if (!co.back().is_constant() || s.degree(1) != s.total_degree())
            return std::nullopt;
        if (s.is_constant())
            return Affine{};
        sheared.push_back(s);
    }
    UPoly E;
    bool any = false;
    for (std::size_t i = 0; i < sheared.size(); ++i)
        for (std::size_t j = i + 1; j < sheared.size(); ++j) {
            UPoly r = to_upoly(resultant(sheared[i], sheared[j], 1), 0);
            if (r.is_zero())
                continue;
            E = any ? gcd(E, r) : r;
            any = true;
        }
    if (!any)
        throw UnsupportedError("every pair of curves shares a component");
    Affine out;
    if (E.degree() <= 0)
        return out;
    std::vector<std::vector<UPoly>> ycoeffs;
    for (const auto& s : sheared)
        ycoeffs.push_back(y_coefficients(s));
    for (const auto& [q, e] : uni_factor(E).factors) {
        (void)e;
        if (q.degree() == 1) {
            Rational alpha = -q[0] / q[1];
            UPoly g;
            for (const auto& yc : ycoeffs)
                g = gcd(g, specialize(yc, alpha));
            if (g.degree() <= 0)
                continue;
            auto root = single_root(g);
            if (!root)
                return std::nullopt;
            Rational y = *root;
            out.points.push_back(PlanePoint::affine(alpha + l * y, y));
        } else {
            auto K = std::make_shared<const NumberField>(q);
            FieldPoly g;
            bool first = true;
            for (const auto& yc : ycoeffs) {
                FieldPoly p = field_poly_from(K, yc);
                if (p.empty())
                    continue;
                g = first ? p : quotient_gcd(g, p, K);
                first = false;
            }
            if (first)
                continue;
            g = quotient_gcd(g, FieldPoly{}, K);
            if (g.size() <= 1)
                continue;
            auto root = single_root(g);
            if (!root)
                return std::nullopt;
            QuotientElement y = *root;
            QuotientElement x = QuotientElement::generator(K) + y * QuotientElement(K, Rational(l));
            out.components.push_back({K, {x, y, QuotientElement(K, Rational(1))}});
        }
    }
    return out;
}

bool has_common_component(const std::vector<PlaneCurve>& curves)
{
    for (std::size_t i = 0; i < curves.size(); ++i)
        for (std::size_t j = i + 1; j < curves.size(); ++j)
            if (is_coprime(curves[i], curves[j]))
                return false;
    MultiPoly g = curves[0].form();
    for (std::size_t i = 1; i < curves.size(); ++i)
        g = gcd(g, curves[i].form());
    return !g.is_constant();
}

} // namespace

SolutionSet common_points(const std::vector<PlaneCurve>& curves)
{
    note(Op::common_points);
    if (curves.size() < 2 || has_common_component(curves))
        throw PositiveDimensionalError("the curves share a component");
    SolutionSet out;
    const Vars& X = plane_vars();

    // points on z = 0
    std::vector<MultiPoly> at_inf;
    for (const auto& c : curves)
        at_inf.push_back(c.form().substitute(2, MultiPoly(X, 0)));
    bool all_zero = std::all_of(at_inf.begin(), at_inf.end(), [](const MultiPoly& h) { return h.is_zero(); });
    if (!all_zero) {
        if (std::all_of(at_inf.begin(), at_inf.end(), [](const MultiPoly& h) { return h.evaluate({1, 0, 0}) == 0; }))
            out.points.emplace_back(1, 0, 0);
        UPoly g;
        for (const auto& h : at_inf) {
            if (h.is_zero())
                continue;
            g = gcd(g, to_upoly(h.substitute(1, MultiPoly(X, 1)), 0));
        }
        if (g.degree() > 0)
            for (const auto& [q, e] : uni_factor(g).factors) {
                (void)e;
                if (q.degree() == 1) {
                    out.points.emplace_back(-q[0] / q[1], 1, 0);
                } else {
                    auto K = std::make_shared<const NumberField>(q);
                    out.components.push_back(
                        {K, {QuotientElement::generator(K), QuotientElement(K, Rational(1)), QuotientElement(K, Rational(0))}});
                }
            }
    }

    // affine points
    std::vector<MultiPoly> fs;
    for (const auto& c : curves)
        fs.push_back(c.form().compose({MultiPoly::variable(local_vars(), 0), MultiPoly::variable(local_vars(), 1),
                                       MultiPoly(local_vars(), 1)}));
    std::optional<Affine> affine;
    for (int l = 0; l < 64 && !affine; ++l)
        affine = solve_affine(fs, l);
    if (!affine)
        throw UnsupportedError("no shear separates the common points");
    std::sort(affine->points.begin(), affine->points.end());
    out.points.insert(out.points.end(), affine->points.begin(), affine->points.end());
    out.components.insert(out.components.end(), affine->components.begin(), affine->components.end());

    for (const auto& p : out.points)
        for (const auto& c : curves)
            if (!c.contains(p))
                throw IntegrityError("solver produced " + to_string(p) + " which is not a common point");
    for (const auto& comp : out.components)
        for (const auto& c : curves)
            if (!evaluate_in(c.form(), comp.coords).is_zero())
                throw IntegrityError("solver produced a conjugate family that is not common");
    return out;
}

SolutionSet singular_locus(const PlaneCurve& c)
{
    note(Op::singular_locus);
    if (!is_squarefree(c))
        throw NonReducedError("singular locus of a non-reduced curve is not finite");
    if (c.degree() <= 1)
        return {};
    std::vector<PlaneCurve> partials;
    for (std::size_t i = 0; i < 3; ++i) {
        MultiPoly d = c.form().derivative(i);
        if (!d.is_zero())
            partials.emplace_back(d);
    }
    return common_points(partials);
}

} // namespace covkit
