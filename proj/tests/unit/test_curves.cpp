#include "doctest.h"

#include "covkit/curves.hpp"
#include "covkit/errors.hpp"
#include "../support/conditions.hpp"
#include "../support/curves.hpp"

#include <random>

using namespace covkit;

namespace {

PlaneCurve C(const char* s) { return PlaneCurve::parse(s); }
MultiPoly L(const char* s) { return parse_poly(s, local_vars()); }

const std::vector<PlanePoint>& pts()
{
    static const auto p = parse_points(fixtures::P);
    return p;
}

const PlaneCurve& C6()
{
    static const PlaneCurve c = C(fixtures::C6);
    return c;
}
const PlaneCurve& C7()
{
    static const PlaneCurve c = C(fixtures::C7);
    return c;
}
const PlaneCurve& C3()
{
    static const PlaneCurve c = C(fixtures::C3);
    return c;
}

} // namespace

TEST_CASE("points normalize and compare projectively")
{
    CHECK(PlanePoint(2, 4, 2) == PlanePoint::affine(1, 2));
    CHECK(PlanePoint(3, 0, 0) == PlanePoint(1, 0, 0));
    CHECK_THROWS_AS(PlanePoint(0, 0, 0), DegenerateInputError);
    CHECK_THROWS_AS(C("x^2+y"), DegenerateInputError);
    CHECK(pts().size() == 6);
    CHECK(pts()[5] == PlanePoint::affine(0, 5));
}

TEST_CASE("multiplicity")
{
    CHECK(multiplicity(C7(), pts()[0]) == 3);
    CHECK(multiplicity(C6(), pts()[0]) == 2);
    CHECK(multiplicity(C("x+3*y"), pts()[0]) == 1);
    CHECK(multiplicity(C("x+3*y"), pts()[1]) == 0);
    for (int i = 1; i <= 5; ++i)
        CHECK(multiplicity(C7(), pts()[i]) == 2);
    CHECK(multiplicity(C6(), pts()[5]) == 1);
}

TEST_CASE("tangent cones")
{
    CHECK(tangent_cone(C7(), pts()[0]) == canonical(L("y*(x^2+40585383/1587545*y^2)")));
    CHECK(tangent_cone(C("y^2-x^2"), PlanePoint(0, 0, 1)) == canonical(L("(y-x)*(y+x)")));
    auto all = C(fixtures::T4) + C3() + C6() + C7();
    CHECK(tangent_cone(all, pts()[0]) ==
          canonical(L("y*(x+3*y)*(x+240/17*y)*(x^2+82080/289*y^2)*(x^2+40585383/1587545*y^2)")));
    CHECK_THROWS_AS(tangent_cone(C3(), PlanePoint::affine(7, 7)), NotOnCurveError);
}

TEST_CASE("blow-up examples")
{
    auto node = blow_up(C("y^2*z-x^2*z-x^3"), PlanePoint(0, 0, 1));
    CHECK(node.multiplicity == 2);
    REQUIRE(node.points.size() == 2);
    for (auto& e : node.points) {
        CHECK(e.intersection == 1);
        CHECK(e.multiplicity == 1);
    }
    // y = t x substitution of y^2 - x^4: t^2 - x^2
    auto tac = blow_up(C("y^2*z^2-x^4"), PlanePoint(0, 0, 1));
    REQUIRE(tac.points.size() == 1);
    CHECK(tac.points[0].intersection == 2);
    CHECK(tac.points[0].multiplicity == 2);
    CHECK(tac.chart_x == L("y^2-x^2"));
    auto cusp = blow_up(C("y^2*z-x^3"), PlanePoint(0, 0, 1));
    REQUIRE(cusp.points.size() == 1);
    CHECK(cusp.points[0].intersection == 2);
    CHECK(cusp.points[0].multiplicity == 1);
    CHECK(cusp.chart_x == L("y^2-x"));
    CHECK_THROWS_AS(blow_up(C("x"), PlanePoint::affine(1, 1)), NotOnCurveError);
}

TEST_CASE("resolution graphs")
{
    auto g = resolution_graph(C7(), pts()[1]);
    CHECK(g.blowups() == 2);
    for (auto& s : g.multiplicity_sequences())
        CHECK(s == std::vector<int>{2, 2});
    auto node = resolution_graph(C6(), pts()[0]);
    CHECK(node.blowups() == 1);
    for (auto& s : node.multiplicity_sequences())
        CHECK(s == std::vector<int>{2});
    auto both = C6() + C7();
    CHECK(resolution_graph(both, pts()[0]).blowups() == 1);
    for (int i = 1; i <= 5; ++i)
        CHECK(resolution_graph(both, pts()[i]).blowups() == 2);
    auto cusp = resolution_graph(C("y^2*z-x^3"), PlanePoint(0, 0, 1));
    CHECK(cusp.blowups() == 3);
    CHECK_THROWS_AS(resolution_graph(C("(x-y)^2*(x+y)"), PlanePoint(0, 0, 1)), NonReducedError);
    // a repeated component away from the point is harmless
    CHECK(resolution_graph(C("(x-z)^2*y"), PlanePoint(0, 0, 1)).blowups() == 0);
}

TEST_CASE("classification")
{
    auto c = classify(C6(), pts()[1]);
    CHECK(c.kind == SingularityKind::tacnode);
    REQUIRE(c.tangents.size() == 1);
    CHECK(c.tangents[0] == Direction{1, 1});
    CHECK(classify(C7(), pts()[0]).kind == SingularityKind::ordinary_triple);
    CHECK(classify(C6(), pts()[0]).kind == SingularityKind::node);
    CHECK(classify(C6(), pts()[5]).kind == SingularityKind::smooth);
    for (int i = 1; i <= 4; ++i)
        CHECK(classify(C6(), pts()[i]).kind == SingularityKind::tacnode);
    for (int i = 1; i <= 5; ++i)
        CHECK(classify(C7(), pts()[i]).kind == SingularityKind::tacnode);
    CHECK(classify(C("y^2*z-x^3"), PlanePoint(0, 0, 1)).kind == SingularityKind::other);
}

TEST_CASE("linear systems reproduce the published curves")
{
    auto J6 = linear_system(6, parse_conditions(fixtures::P, fixtures::M1, fixtures::T));
    REQUIRE(J6.size() == 1);
    CHECK(to_string(J6[0]) == fixtures::C6);
    auto J7 = linear_system(7, parse_conditions(fixtures::P, fixtures::M2, fixtures::T));
    REQUIRE(J7.size() == 1);
    CHECK(to_string(J7[0]) == fixtures::C7);
    auto J3 = linear_system(3, parse_conditions(fixtures::P, fixtures::M3, fixtures::T));
    REQUIRE(J3.size() == 1);
    CHECK(to_string(J3[0]) == fixtures::C3);
}

TEST_CASE("small linear systems")
{
    auto line = linear_system(1, {{PlanePoint::affine(0, 0), {1}, {}}, {PlanePoint::affine(-3, 1), {1}, {}}});
    REQUIRE(line.size() == 1);
    CHECK(line[0] == parse_poly(fixtures::T4, plane_vars()));

    auto conds = parse_conditions(fixtures::P, "[[0],[1,1],[1,1],[0],[1],[0]]", fixtures::T);
    auto conic = linear_system(2, conds);
    REQUIRE(conic.size() == 1);
    CHECK(conic[0] == canonical(parse_poly(fixtures::conic_tangent, plane_vars())));
    CHECK(!PlaneCurve(conic[0]).contains(pts()[5]));

    auto five = linear_system(2, parse_conditions(fixtures::P, "[[0],[1],[1],[1],[1],[1]]", fixtures::T));
    REQUIRE(five.size() == 1);
    CHECK(five[0] == canonical(parse_poly(fixtures::conic_five, plane_vars())));
    // not tangent to T1 at p1
    CHECK(!satisfies(PlaneCurve(five[0]), {pts()[1], {1, 1}, {{1, 1}}}));

    CHECK(linear_system(2, {}).size() == 6);
    CHECK_THROWS_AS(linear_system(4, {{pts()[1], {2, 2}, {}}}), ConditionError);
}

TEST_CASE("linear system members satisfy their conditions")
{
    for (auto [d, M] : {std::pair{6, fixtures::M1}, std::pair{7, fixtures::M2}, std::pair{3, fixtures::M3}}) {
        auto conds = parse_conditions(fixtures::P, M, fixtures::T);
        for (const auto& f : linear_system(d, conds))
            for (const auto& c : conds)
                CHECK(satisfies(PlaneCurve(f), c));
    }
    // a deeper chain: contact of order 3 with y = x^2 at the origin
    SingularityCondition osc{PlanePoint(0, 0, 1), {1, 1, 1}, {{1, 0}, {1, 1}}};
    auto sys = linear_system(2, {osc});
    CHECK(sys.size() == 3);
    for (const auto& f : sys)
        CHECK(satisfies(PlaneCurve(f), osc));
    CHECK(satisfies(C("y*z-x^2"), osc));
}

TEST_CASE("intersection multiplicities")
{
    CHECK(intersection_multiplicity(C("x"), C("y"), PlanePoint(0, 0, 1)) == 1);
    CHECK(intersection_multiplicity(C6(), C7(), pts()[1]) == 8);
    int total = 0;
    for (const auto& p : pts())
        total += intersection_multiplicity(C6(), C7(), p);
    CHECK(total == 42);
    CHECK(intersection_multiplicity(C("y*z-x^2"), C("y"), PlanePoint(0, 0, 1)) == 2);
    CHECK_THROWS_AS(intersection_multiplicity(C("x*y"), C("x*(x-z)"), PlanePoint(0, 0, 1)), InfiniteMultiplicityError);
    CHECK(intersection_multiplicity(C("x*y"), C("x*(x-z)"), PlanePoint(1, 0, 1)) == 1);
}

TEST_CASE("two intersection methods agree on random germs")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_curve = [&](int d) {
        MultiPoly f(plane_vars());
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j)
                if (i + j >= 2 || coef(rng) > 1)
                    f.add_term({i, j, d - i - j}, coef(rng));
        return f;
    };
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        MultiPoly f = random_curve(3), g = random_curve(3);
        if (f.is_zero() || g.is_zero())
            continue;
        PlaneCurve a(f), b(g);
        if (!is_coprime(a, b))
            continue;
        PlanePoint o(0, 0, 1);
        int x = intersection_multiplicity_blowup(a, b, o);
        int y = intersection_multiplicity_resultant(a, b, o);
        CHECK(x == y);
        ++checked;
    }
    CHECK(checked > 20);
}

TEST_CASE("singular loci")
{
    auto s = singular_locus(C6() + C7());
    CHECK(s.components.empty());
    REQUIRE(s.points.size() == 6);
    for (const auto& p : pts())
        CHECK(s.contains(p));
    CHECK(singular_locus(C("x^2+y^2-z^2")).size() == 0);
    auto cusp = singular_locus(C("y^2*z-x^3"));
    REQUIRE(cusp.points.size() == 1);
    CHECK(cusp.points[0] == PlanePoint(0, 0, 1));
    CHECK_THROWS_AS(singular_locus(C("x^2*y")), NonReducedError);
}

TEST_CASE("common points")
{
    auto T4 = C(fixtures::T4);
    auto s = common_points({T4 + C6(), C7(), T4 + C3()});
    CHECK(s.components.empty());
    REQUIRE(s.points.size() == 6);
    for (const auto& p : pts())
        CHECK(s.contains(p));
    auto o = common_points({C("x"), C("y")});
    REQUIRE(o.points.size() == 1);
    CHECK(o.points[0] == PlanePoint(0, 0, 1));
    auto conj = common_points({C("x^2+y^2-z^2"), C("x-y")});
    CHECK(conj.points.empty());
    REQUIRE(conj.components.size() == 1);
    CHECK(conj.components[0].degree() == 2);
    CHECK(conj.size() == 2);
    auto inf = common_points({C("x*(x-y)"), C("y*z")});
    CHECK(inf.size() == 3);
    CHECK(inf.contains(PlanePoint(0, 0, 1)));
    CHECK(inf.contains(PlanePoint(0, 1, 0)));
    CHECK(inf.contains(PlanePoint(1, 1, 0)));
    CHECK(common_points({C("x*y"), C("x^2-y^2+x*z")}).size() == 2);
    CHECK_THROWS_AS(common_points({C("x*y"), C("x*z")}), PositiveDimensionalError);
}

TEST_CASE("absolute irreducibility")
{
    CHECK(absolute_factor_count(C6()) == 1);
    CHECK(absolute_factor_count(C7()) == 1);
    CHECK(absolute_factor_count(C3()) == 1);
    CHECK(absolute_factor_count(C("x^2+y^2")) == 2);
    CHECK(absolute_factor_count(C("x*y")) == 2);
    CHECK(absolute_factor_count(C("y^2*z-x^3")) == 1);
    CHECK_THROWS_AS(absolute_factor_count(C("x^2*y")), NonReducedError);
    CHECK(absolute_factor_count(C3() + C("x^2+y^2-z^2") + C("x^2+2*y^2")) == 4);
}

TEST_CASE("squarefree and coprime checks")
{
    CHECK(is_squarefree(C6() + C7()));
    CHECK(!is_squarefree(C("x^2*y")));
    CHECK(!is_squarefree(C("z^2*y")));
    CHECK(is_squarefree(C("z*y")));
    CHECK(is_coprime(C6(), C7()));
    CHECK(!is_coprime(C(fixtures::T4) + C6(), C(fixtures::T4) + C3()));
    CHECK(!is_coprime(C("z*x"), C("z*y")));
}

// Two line pairs against a conic through two chosen points on each line:
// every intersection is rational, so all of them are audited.
TEST_CASE("Bezout audit on random pairs")
{
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> coef(-5, 5);
    int audited = 0;
    for (int trial = 0; trial < 40 && audited < 8; ++trial) {
        PlanePoint a = PlanePoint::affine(coef(rng), coef(rng)), b = PlanePoint::affine(coef(rng), coef(rng));
        PlanePoint c = PlanePoint::affine(coef(rng), coef(rng)), d = PlanePoint::affine(coef(rng), coef(rng));
        if (a == b || c == d)
            continue;
        auto l1 = linear_system(1, {{a, {1}, {}}, {b, {1}, {}}});
        auto l2 = linear_system(1, {{c, {1}, {}}, {d, {1}, {}}});
        if (l1.size() != 1 || l2.size() != 1 || l1[0] == l2[0])
            continue;
        PlaneCurve lines(l1[0] * l2[0]);
        std::vector<SingularityCondition> through;
        for (const auto& p : {a, b, c, d})
            through.push_back({p, {1}, {}});
        auto pencil = linear_system(2, through);
        if (pencil.empty())
            continue;
        MultiPoly q = pencil[0];
        for (std::size_t k = 1; k < pencil.size(); ++k)
            q += pencil[k] * Rational(coef(rng));
        if (q.is_zero())
            continue;
        PlaneCurve conic(q);
        if (!is_coprime(conic, lines))
            continue;
        auto s = common_points({conic, lines});
        CHECK(s.components.empty());
        int total = 0;
        for (const auto& p : s.points)
            total += intersection_multiplicity(conic, lines, p);
        CHECK(total == 4);
        ++audited;
    }
    CHECK(audited >= 4);
}
