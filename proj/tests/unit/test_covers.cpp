#include "doctest.h"

#include "covkit/covers.hpp"
#include "covkit/errors.hpp"
#include "../support/datum.hpp"
#include "../support/table.hpp"

#include <random>

using namespace covkit;

namespace doctest {
template <> struct StringMaker<DivisorClass> {
    static String convert(const DivisorClass& D) { return to_symbolic(D).c_str(); }
};
} // namespace doctest

namespace {

const BuildingData& Y() { return fixtures::datum(); }
ConfigPtr cfg() { return fixtures::configuration(); }
const NegativeCurveCatalog& cat() { return fixtures::shared_catalog(); }

const CharacterSheet& sheet()
{
    static const CharacterSheet s = solve_character_sheet(Y());
    return s;
}

const BuildingData& U()
{
    static const BuildingData u = quotient_datum(Y(), {Y().parse_element("x"), Y().parse_element("y")});
    return u;
}

DivisorClass T() { return DivisorClass::hyperplane(cfg()); }
DivisorClass E(const std::string& c) { return DivisorClass::exceptional(cfg(), static_cast<std::size_t>(cfg()->index(c))); }

ConfigPtr plane()
{
    static const ConfigPtr p = std::make_shared<BlowupConfiguration>();
    return p;
}

// Double cover of the plane branched along a smooth curve of degree 2d.
BuildingData double_plane(int d, const Rational& a, const Rational& b)
{
    MultiPoly x = MultiPoly::variable(plane_vars(), 0), y = MultiPoly::variable(plane_vars(), 1),
              z = MultiPoly::variable(plane_vars(), 2);
    MultiPoly f = x.pow(2 * d) * a + y.pow(2 * d) * b + z.pow(2 * d);
    BuildingData data(plane(), {"s"});
    data.assign(1, {strict_piece("B", PlaneCurve(f), plane())});
    return data;
}

} // namespace

TEST_CASE("characters and group elements")
{
    CHECK(character_label(1, 4) == "-1111");
    CHECK(character_label(12, 4) == "11-1-1");
    CHECK(parse_character("11-1-1") == 12);
    CHECK(character_value(3, 1) == -1);
    CHECK(character_value(3, 3) == 1);
    CHECK(Y().element_name(3) == "xy");
    CHECK(Y().parse_element("zw") == 12);
    CHECK(Y().generates());
    CHECK_THROWS_AS(Y().parse_element("v"), ParseError);
}

TEST_CASE("character sheet reproduces the table")
{
    REQUIRE(sheet().L.size() == 16);
    for (Character chi = 1; chi < 16; ++chi) {
        const auto& [label, row] = fixtures::table()[chi - 1];
        CHECK(character_label(chi, 4) == label);
        CHECK(sheet().L[chi].row() == row);
    }
    CHECK(sheet().L[1] == T() - E("p0") - E("p1'") - E("p3'"));
    CHECK(to_string(sheet().L[12]) == "(7; 3, 2, 2, 2, 2, 2, 2, 2, 3, 1, 2)");
}

TEST_CASE("branch classes match the published definitions")
{
    auto sum = [](std::initializer_list<const char*> cs) {
        DivisorClass d = DivisorClass::zero(cfg());
        for (auto c : cs)
            d += E(c);
        return d;
    };
    CHECK(Y().branch_class(1) == T() - E("p0") - 2 * E("p1'"));
    CHECK(Y().branch_class(4) == 6 * T() - 2 * E("p0") -
                                     2 * sum({"p1", "p1'", "p2", "p2'", "p3", "p3'", "p4", "p4'"}) - 2 * E("p5'"));
    CHECK(Y().branch_class(8) == 8 * T() - 4 * E("p0") - 2 * sum({"p1", "p1'", "p2", "p2'", "p3", "p3'"}) -
                                     2 * E("p4") - 4 * E("p4'") - 2 * E("p5") - 2 * E("p5'"));
}

TEST_CASE("sheet invariants: orthogonality and doubling round trip")
{
    for (auto s : Y().support())
        for (const auto& p : Y().pieces(s)) {
            int n = 0;
            for (Character chi = 1; chi < 16; ++chi)
                n += character_value(chi, s) == -1;
            CHECK(n == 8);
            (void)p;
        }
    for (Character chi = 1; chi < 16; ++chi) {
        DivisorClass sum = DivisorClass::zero(cfg());
        for (auto s : Y().support())
            if (character_value(chi, s) == -1)
                sum += Y().branch_class(s);
        CHECK(2 * sheet().L[chi] == sum);
    }
}

TEST_CASE("small character sheets")
{
    auto conic = PlaneCurve::parse("x^2+y^2+z^2");
    BuildingData d(plane(), {"s"});
    d.assign(1, {strict_piece("Q", conic, plane())});
    CHECK(solve_character_sheet(d).L[1] == DivisorClass::hyperplane(plane()));
    BuildingData odd(plane(), {"s"});
    odd.assign(1, {strict_piece("L", PlaneCurve::parse("x"), plane())});
    CHECK_THROWS_AS(solve_character_sheet(odd), InvalidBuildingData);
    CHECK_THROWS_AS(odd.assign(1, {strict_piece("L", PlaneCurve::parse("y"), plane())}), InvalidBuildingData);
    CHECK_THROWS_AS(odd.assign(1, {strict_piece("M", PlaneCurve::parse("x^2"), plane())}), InvalidBuildingData);
}

TEST_CASE("branch locus is smooth and disjoint")
{
    auto rep = validate_branch(Y());
    CHECK(rep.smooth);
    CHECK(rep.disjoint);
    CHECK(rep.ok());
    auto pts = parse_points(fixtures::P);
    auto c6 = PlaneCurve::parse(fixtures::C6), c7 = PlaneCurve::parse(fixtures::C7);
    long oracle = 0;
    for (const auto& p : pts)
        oracle += intersection_multiplicity(c6, c7, p);
    CHECK(oracle == 42);
    bool seen = false;
    for (const auto& pc : rep.pairs)
        if (pc.a == "C6" && pc.b == "C7") {
            seen = true;
            CHECK(pc.audited);
            CHECK(pc.at_centers == oracle);
            CHECK(pc.degree_product == 42);
            CHECK(pc.pairing == 0);
        }
    CHECK(seen);
    auto z = Y().pieces(4);
    CHECK(intersect(z[0].cls, z[1].cls) == 0);

    BuildingData lines(plane(), {"a", "b"});
    lines.assign(1, {strict_piece("L1", PlaneCurve::parse("x-y"), plane())});
    lines.assign(2, {strict_piece("L2", PlaneCurve::parse("x+y-z"), plane())});
    auto bad = validate_branch(lines);
    CHECK(bad.smooth);
    CHECK_FALSE(bad.disjoint);

    BuildingData nodal(plane(), {"a"});
    nodal.assign(1, {strict_piece("N", PlaneCurve::parse("y^2*z-x^3-x^2*z"), plane())});
    CHECK_FALSE(validate_branch(nodal).smooth);

    BuildingData wrong(cfg(), {"a"});
    auto p = strict_piece("T", PlaneCurve::parse("x-y"), cfg());
    p.cls = T();
    wrong.assign(1, {p});
    CHECK_THROWS_AS(validate_branch(wrong), IntegrityError);
}

TEST_CASE("euler characteristic")
{
    auto e = euler_characteristic(Y(), sheet());
    CHECK(e.chi == 4);
    CHECK(e.terms == std::vector<long>{16, -1, -1, -1, 0, -1, -1, -1, 0, -1, -1, -1, 0, -1, -1, -1});
    auto eu = euler_characteristic(U(), solve_character_sheet(U()));
    CHECK(eu.chi == 4);
    CHECK(eu.terms == std::vector<long>{4, 0, 0, 0});
    BuildingData trivial(cfg(), {});
    CHECK(euler_characteristic(trivial, solve_character_sheet(trivial)).chi == 1);
}

TEST_CASE("geometric genus and irregularity")
{
    auto g = geometric_genus(Y(), sheet(), cat());
    CHECK(g.pg == 3);
    CHECK(g.q == 0);
    std::vector<int> dims;
    for (Character chi = 1; chi < 16; ++chi)
        dims.push_back(g.h0[chi].dimension);
    CHECK(dims == std::vector<int>{0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0});
    auto gu = geometric_genus(U(), solve_character_sheet(U()), cat());
    CHECK(gu.pg == 3);
    CHECK(gu.q == 0);

    auto d = double_plane(1, 1, 1);
    NegativeCurveCatalog none(plane());
    CHECK(geometric_genus(d, solve_character_sheet(d), none).pg == 0);
}

TEST_CASE("quotients")
{
    CHECK(U().rank() == 2);
    CHECK(U().generators() == std::vector<std::string>{"z", "w"});
    CHECK(U().support() == std::vector<GroupElement>{1, 2});
    auto su = solve_character_sheet(U());
    // characters of U are the characters of Y trivial on x and y
    CHECK(su.L[1] == sheet().L[4]);
    CHECK(su.L[2] == sheet().L[8]);
    CHECK(su.L[3] == sheet().L[12]);

    auto whole = quotient_datum(Y(), {1, 2, 4, 8});
    CHECK(whole.rank() == 0);
    CHECK(whole.support().empty());
    auto same = quotient_datum(Y(), {});
    CHECK(same.rank() == 4);
    CHECK(solve_character_sheet(same).L == sheet().L);
    CHECK_THROWS_AS(quotient_datum(Y(), {16}), SubgroupError);
}

TEST_CASE("pullback calculus")
{
    auto xi1 = half_pullback({"T1", "E1-E1'", "T2", "E2-E2'", "T3", "E3-E3'"}, Y());
    auto xi2 = half_pullback({"T4", "E4-E4'", "E5-E5'"}, Y());
    auto C3 = strict_class(PlaneCurve::parse(fixtures::C3), cfg());
    auto pc = pullback(C3, Y());
    CHECK(intersect(xi1, xi1) == -48);
    CHECK(intersect(xi1, xi2) == 0);
    CHECK(intersect(xi1, pc) == 0);
    CHECK(intersect(pc, pc) == 0);
    CHECK(intersect(xi2, pc) == 24);
    CHECK(intersect(pullback(T(), Y()), pullback(T(), Y())) == 16);
    CHECK(intersect(half_pullback(T() - E("p0") - 2 * E("p4'") + E("p5") - E("p5'"), Y()), xi2) == -24);
    CHECK_THROWS_AS(half_pullback(E("p0"), Y()), InvalidBuildingData);
    CHECK_THROWS_AS(half_pullback({"E0"}, Y()), InvalidBuildingData);

    // the double cover branched along D_z
    auto Q = quotient_datum(Y(), {1, 2, 8});
    CHECK(Q.rank() == 1);
    for (int i = 1; i <= 3; ++i) {
        auto p = pullback(T() - E("p0") - 2 * E("p" + std::to_string(i) + "'"), Q);
        CHECK(intersect(p, p) == -8);
        CurveFamily f{"A", {}, p, 4, -2};
        CHECK_NOTHROW(validate_family(f));
    }
}

TEST_CASE("canonical class of the cover")
{
    auto k = canonical_on_cover(Y(), sheet(), parse_character("11-1-1"));
    CHECK(k.K2 == -48);
    CHECK(k.xi.twice == Y().branch_class(1) + Y().branch_class(2) + Y().branch_class(3));
    CHECK_THROWS_AS(canonical_on_cover(Y(), sheet(), 0), InvalidBuildingData);

    for (int d = 1; d <= 5; ++d) {
        auto data = double_plane(d, 1, 2);
        auto s = solve_character_sheet(data);
        // K = psi^*((d - 3) H), so K^2 = 2 (d - 3)^2
        CHECK(canonical_on_cover(data, s, 1).K2 == 2 * (d - 3) * (d - 3));
    }
    BuildingData unbranched(cfg(), {"a", "b"});
    auto su = solve_character_sheet(unbranched);
    auto K = canonical_class(cfg());
    CHECK(canonical_on_cover(unbranched, su, 1).K2 == 4 * intersect(K, K));
}

TEST_CASE("minimal model ledger")
{
    auto k = canonical_on_cover(Y(), sheet(), parse_character("11-1-1"));
    auto xi1 = make_family("xi1", {"T1", "E1-E1'", "T2", "E2-E2'", "T3", "E3-E3'"}, Y(), 48, -1);
    auto xi2 = make_family("xi2", {"T4", "E4-E4'", "E5-E5'"}, Y(), 24, -1);
    auto ledger = minimal_model(k, {xi1, xi2});
    CHECK(ledger.start_K2 == -48);
    CHECK(ledger.K2 == 24);
    CHECK(minimal_model(k, {}).K2 == -48);

    auto bad = xi2;
    bad.count = 23;
    CHECK_THROWS_AS(minimal_model(k, {xi1, bad}), LedgerError);

    auto su = solve_character_sheet(U());
    auto ku = canonical_on_cover(U(), su, 3);
    CHECK(ku.K2 == 0);
    auto th1 = make_family("theta1-4", {"T4", "E4-E4'"}, U(), 4, -1);
    auto th2 = make_family("theta5-6", {"E5-E5'"}, U(), 2, -1);
    CHECK(minimal_model(ku, {th1, th2}).K2 == 6);
}

TEST_CASE("double covers of the plane reduce to the classical formulas")
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> deg(1, 5), coef(1, 9);
    NegativeCurveCatalog none(plane());
    for (int n = 0; n < 3; ++n) {
        int d = deg(rng);
        auto data = double_plane(d, coef(rng), coef(rng));
        auto s = solve_character_sheet(data);
        // L = dH, K = -3H
        long L2 = d * d, KL = -3 * d;
        CHECK(euler_characteristic(data, s).chi == 2 + (L2 + KL) / 2);
        CHECK(canonical_on_cover(data, s, 1).K2 == 2 * (d - 3) * (d - 3));
        long pg = d >= 3 ? (d - 1) * (d - 2) / 2 : 0;
        CHECK(geometric_genus(data, s, none).pg == pg);
    }
}

TEST_CASE("base-point audit of the intermediate cover")
{
    auto su = solve_character_sheet(U());
    auto gu = geometric_genus(U(), su, cat());
    auto th1 = make_family("theta1-4", {"T4", "E4-E4'"}, U(), 4, -1);
    auto th2 = make_family("theta5-6", {"E5-E5'"}, U(), 2, -1);
    auto T4 = PlaneCurve::parse(fixtures::T4), C6 = PlaneCurve::parse(fixtures::C6),
         C7 = PlaneCurve::parse(fixtures::C7), C3 = PlaneCurve::parse(fixtures::C3);
    auto rep = base_point_audit(U(), gu, cat(), {th1, th2}, {T4 + C6, C7, T4 + C3});
    for (const auto& f : rep.failures)
        MESSAGE(f);
    CHECK(rep.base_point_free());
    CHECK(rep.count_ok);
    CHECK(rep.images_ok);
    CHECK(rep.common_ok);
    CHECK(rep.common.points.size() == 6);
    CHECK(rep.resolution_ok);
    CHECK(rep.families_ok);
    REQUIRE(rep.generators.size() == 3);
    // chi = -11: trivial on w, so D_w enters once; E5 is the fixed part
    CHECK(rep.generators[0].coefficients.at("T4") == 1);
    CHECK(rep.generators[0].coefficients.at("E4-E4'") == 1);
    CHECK(rep.generators[0].coefficients.at("E5-E5'") == 2);
    CHECK(rep.generators[1].coefficients.at("E5-E5'") == 1);
    CHECK(rep.generators[1].coefficients.at("T4") == 2);
    CHECK(rep.generators[2].coefficients.at("C6") == 0);

    auto drop = base_point_audit(U(), gu, cat(), {th1, th2}, {T4 + C6, C7});
    CHECK_FALSE(drop.base_point_free());
    CHECK_FALSE(drop.count_ok);
}
