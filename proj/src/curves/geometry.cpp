#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/factor.hpp"
#include "germ.hpp"

#include "json.hpp"

namespace covkit {

const Vars& plane_vars()
{
    static const Vars v{"x", "y", "z"};
    return v;
}

const Vars& local_vars()
{
    static const Vars v{"x", "y"};
    return v;
}

PlanePoint::PlanePoint(Rational x, Rational y, Rational z) : c_{std::move(x), std::move(y), std::move(z)}
{
    int last = 2;
    while (last >= 0 && c_[last] == 0)
        --last;
    if (last < 0)
        throw DegenerateInputError("the point (0:0:0) does not exist");
    Rational s = c_[last];
    for (auto& v : c_)
        v /= s;
}

bool operator<(const PlanePoint& a, const PlanePoint& b)
{
    for (int i = 2; i >= 0; --i)
        if (a.c_[i] != b.c_[i])
            return a.c_[i] < b.c_[i];
    return false;
}

std::string to_string(const PlanePoint& p)
{
    return "(" + to_string(p.x()) + ":" + to_string(p.y()) + ":" + to_string(p.z()) + ")";
}

Direction Direction::normalized() const
{
    if (dx == 0 && dy == 0)
        throw ConditionError("zero tangent direction");
    if (dx == 0)
        return {0, 1};
    return {1, dy / dx};
}

std::string to_string(const Direction& d) { return "[" + to_string(d.dx) + "," + to_string(d.dy) + "]"; }

PlaneCurve::PlaneCurve(const MultiPoly& form, std::string name) : name_(std::move(name))
{
    if (form.is_zero())
        throw DegenerateInputError("a curve needs a nonzero form");
    form_ = form.in_context(plane_vars());
    if (!form_.is_homogeneous())
        throw DegenerateInputError("curve form is not homogeneous: " + to_string(form_));
    degree_ = form_.total_degree();
}

PlaneCurve PlaneCurve::parse(std::string_view text, std::string name)
{
    return PlaneCurve(parse_poly(text, plane_vars()), std::move(name));
}

bool PlaneCurve::contains(const PlanePoint& p) const { return form_.evaluate(p.coords()) == 0; }

PlaneCurve operator+(const PlaneCurve& a, const PlaneCurve& b)
{
    std::string name;
    if (!a.name().empty() && !b.name().empty())
        name = a.name() + "+" + b.name();
    return PlaneCurve(a.form() * b.form(), name);
}

namespace {

Rational json_rational(const nlohmann::json& j)
{
    if (j.is_number_integer())
        return Rational(std::to_string(j.get<long long>()));
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    throw ParseError("expected an integer or \"a/b\" string, got " + j.dump());
}

nlohmann::json parse_list(std::string_view text)
{
    try {
        auto j = nlohmann::json::parse(text);
        if (!j.is_array())
            throw ParseError("expected a bracketed list: " + std::string(text));
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed list: ") + e.what());
    }
}

PlanePoint json_point(const nlohmann::json& j)
{
    if (!j.is_array() || (j.size() != 2 && j.size() != 3))
        throw ParseError("a point is [x,y] or [x,y,z]: " + j.dump());
    if (j.size() == 2)
        return PlanePoint::affine(json_rational(j[0]), json_rational(j[1]));
    return PlanePoint(json_rational(j[0]), json_rational(j[1]), json_rational(j[2]));
}

} // namespace

std::vector<PlanePoint> parse_points(std::string_view points)
{
    std::vector<PlanePoint> out;
    for (const auto& j : parse_list(points))
        out.push_back(json_point(j));
    return out;
}

std::vector<SingularityCondition> parse_conditions(std::string_view points, std::string_view mults,
                                                   std::string_view dirs)
{
    auto P = parse_points(points);
    auto M = parse_list(mults), T = parse_list(dirs);
    if (M.size() != P.size() || T.size() != P.size())
        throw ParseError("point, multiplicity and direction lists differ in length");
    std::vector<SingularityCondition> out;
    for (std::size_t i = 0; i < P.size(); ++i) {
        SingularityCondition c{P[i], {}, {}};
        if (!M[i].is_array())
            throw ParseError("multiplicity entry must be a list");
        for (const auto& m : M[i]) {
            if (!m.is_number_integer() || m.get<int>() < 0)
                throw ParseError("multiplicities are nonnegative integers");
            c.multiplicities.push_back(m.get<int>());
        }
        if (!T[i].is_array())
            throw ParseError("direction entry must be a list");
        for (const auto& d : T[i]) {
            if (!d.is_array() || d.size() != 2)
                throw ParseError("a direction is [dx,dy]");
            c.directions.push_back({json_rational(d[0]), json_rational(d[1])});
        }
        out.push_back(std::move(c));
    }
    return out;
}

MultiPoly local_germ(const MultiPoly& form, const PlanePoint& p)
{
    const Vars& L = local_vars();
    MultiPoly u = MultiPoly::variable(L, 0), v = MultiPoly::variable(L, 1);
    std::vector<MultiPoly> images;
    if (p.is_affine())
        images = {u + MultiPoly(L, p.x()), v + MultiPoly(L, p.y()), MultiPoly(L, 1)};
    else if (p.y() != 0)
        images = {u + MultiPoly(L, p.x()), MultiPoly(L, 1), v};
    else
        images = {MultiPoly(L, 1), u, v};
    return form.in_context(plane_vars()).compose(images);
}

namespace detail {

MultiPoly blow_up_germ(const MultiPoly& g, const Direction& dir, int m)
{
    Direction d = dir.normalized();
    const Vars& vars = g.vars();
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < vars.size(); ++i)
        images.push_back(MultiPoly::variable(vars, i));
    MultiPoly x = images[0], y = images[1];
    if (d.dx != 0) {
        images[1] = x * y + x * d.dy;
    } else {
        images[0] = x * y;
        images[1] = x;
    }
    MultiPoly t = g.compose(images);
    MultiPoly out(vars);
    for (const auto& [e, c] : t.terms()) {
        if (e[0] < m)
            continue;
        Exponent f = e;
        f[0] -= m;
        out.add_term(f, c);
    }
    return out;
}

std::vector<ConeFactor> cone_factors(const MultiPoly& cone)
{
    std::vector<ConeFactor> out;
    if (cone.is_zero())
        return out;
    int k = cone.total_degree();
    int dy = cone.degree(1);
    // h(1, s)
    std::vector<Rational> c(static_cast<std::size_t>(dy + 1), Rational(0));
    for (const auto& [e, a] : cone.terms())
        c[static_cast<std::size_t>(e[1])] += a;
    UPoly h{c};
    if (h.degree() > 0) {
        auto fac = uni_factor(h);
        for (const auto& [f, ex] : fac.factors) {
            ConeFactor cf;
            cf.exponent = ex;
            if (f.degree() == 1) {
                cf.direction = {1, -f[0] / f[1]};
            } else {
                cf.rational = false;
                cf.slope_poly = f;
            }
            out.push_back(cf);
        }
    }
    if (k > dy) {
        ConeFactor v;
        v.direction = {0, 1};
        v.exponent = k - dy;
        out.push_back(v);
    }
    return out;
}

Direction line_direction(const MultiPoly& line)
{
    Exponent ex(line.nvars(), 0), ey(line.nvars(), 0);
    ex[0] = 1;
    ey[1] = 1;
    Rational a = line.coeff(ex), b = line.coeff(ey);
    return Direction{-b, a}.normalized();
}

UPoly restrict_to_line(const MultiPoly& form, const Rational& a, const Rational& b)
{
    Vars S{"s"};
    MultiPoly s = MultiPoly::variable(S, 0);
    MultiPoly f = form.in_context(plane_vars()).compose({MultiPoly(S, b) + s * a, s, MultiPoly(S, 1)});
    return to_upoly(f, 0);
}

} // namespace detail

int multiplicity(const PlaneCurve& c, const PlanePoint& p) { note(Op::multiplicity); return local_germ(c.form(), p).order(); }

std::vector<int> multiplicity_sequence(const PlaneCurve& c, const PlanePoint& p, const std::vector<Direction>& dirs)
{
    MultiPoly g = local_germ(c.form(), p);
    std::vector<int> out{g.order()};
    for (const auto& d : dirs) {
        g = detail::blow_up_germ(g, d, out.back());
        out.push_back(g.order());
    }
    return out;
}

// Virtual multiplicities: after each step the strict transform is divided
// by the imposed power of the exceptional curve, as linear_system does.
bool satisfies(const PlaneCurve& c, const SingularityCondition& cond)
{
    const auto& m = cond.multiplicities;
    if (!m.empty() && cond.directions.size() + 1 < m.size())
        throw ConditionError("condition at " + to_string(cond.point) + " lacks tangent directions");
    MultiPoly g = local_germ(c.form(), cond.point);
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (g.order() < m[k])
            return false;
        if (k + 1 < m.size())
            g = detail::blow_up_germ(g, cond.directions[k], m[k]);
    }
    return true;
}

MultiPoly tangent_cone(const PlaneCurve& c, const PlanePoint& p)
{
    note(Op::tangent_cone);
    MultiPoly g = local_germ(c.form(), p);
    if (g.order() == 0)
        throw NotOnCurveError(to_string(p) + " is not on the curve");
    return canonical(g.lowest_part());
}

BlowUp blow_up(const PlaneCurve& c, const PlanePoint& p)
{
    note(Op::blow_up);
    MultiPoly g = local_germ(c.form(), p);
    int m = g.order();
    if (m == 0)
        throw NotOnCurveError(to_string(p) + " is not on the curve");
    BlowUp out;
    out.multiplicity = m;
    out.chart_x = detail::blow_up_germ(g, {1, 0}, m);
    out.chart_y = detail::blow_up_germ(g, {0, 1}, m);
    // chart_y puts the exceptional coordinate first; swap to (x*y, y)
    out.chart_y = out.chart_y.compose({MultiPoly::variable(local_vars(), 1), MultiPoly::variable(local_vars(), 0)});
    for (const auto& f : detail::cone_factors(g.lowest_part())) {
        ExceptionalPoint e;
        e.rational = f.rational;
        e.intersection = f.exponent;
        if (f.rational) {
            e.direction = f.direction;
            e.multiplicity = detail::blow_up_germ(g, f.direction, m).order();
        } else {
            e.slope_poly = f.slope_poly;
            e.multiplicity = f.exponent == 1 ? 1 : -1;
        }
        out.points.push_back(e);
    }
    return out;
}

} // namespace covkit
