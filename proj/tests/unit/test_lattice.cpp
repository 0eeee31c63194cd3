#include "doctest.h"

#include "covkit/errors.hpp"
#include "covkit/lattice.hpp"
#include "../support/configuration.hpp"
#include "../support/table.hpp"

#include <random>

using namespace covkit;

namespace doctest {
template <> struct StringMaker<DivisorClass> {
    static String convert(const DivisorClass& D) { return to_symbolic(D).c_str(); }
};
} // namespace doctest

namespace {

ConfigPtr cfg() { return fixtures::configuration(); }

DivisorClass T() { return DivisorClass::hyperplane(cfg()); }
DivisorClass E(const std::string& center) { return DivisorClass::exceptional(cfg(), static_cast<std::size_t>(cfg()->index(center))); }
DivisorClass Ep(int i) { return E("p" + std::to_string(i) + "'"); }
DivisorClass Ei(int i) { return E("p" + std::to_string(i)); }

DivisorClass row(const std::string& label)
{
    for (const auto& [l, r] : fixtures::table())
        if (l == label)
            return DivisorClass::from_row(cfg(), r);
    throw std::runtime_error("no row " + label);
}

// Pairing written out on the diagonal basis.
long pairing_oracle(const DivisorClass& a, const DivisorClass& b)
{
    long s = a.degree() * b.degree();
    for (std::size_t i = 0; i < a.multiplicities().size(); ++i)
        s += -1 * (-a[i]) * (-b[i]);
    return s;
}

const NegativeCurveCatalog& cat()
{
    static const NegativeCurveCatalog c = fixtures::catalog();
    return c;
}

DivisorClass random_class(std::mt19937& rng)
{
    std::uniform_int_distribution<long> u(-6, 6);
    std::vector<long> a(cfg()->size());
    for (auto& v : a)
        v = u(rng);
    return DivisorClass(cfg(), u(rng), a);
}

} // namespace

TEST_CASE("configuration structure")
{
    CHECK(cfg()->size() == 11);
    CHECK((*cfg())[2].name == "p1'");
    CHECK((*cfg())[2].parent == 1);
    CHECK(cfg()->root_point(2) == PlanePoint::affine(2, 2));
    CHECK(cfg()->path(2).size() == 1);
    BlowupConfiguration c;
    CHECK_THROWS_AS(c.add_infinitely_near("q", 0, {1, 0}), ConfigurationError);
    int k = c.add_point("q", PlanePoint::affine(0, 0));
    CHECK_THROWS_AS(c.add_infinitely_near("q'", k, {0, 0}), ConfigurationError);
    CHECK_THROWS_AS(c.add_point("r", PlanePoint::affine(0, 0)), ConfigurationError);
}

TEST_CASE("intersection pairing")
{
    for (std::size_t i = 0; i < cfg()->size(); ++i) {
        auto e = DivisorClass::exceptional(cfg(), i);
        CHECK(intersect(e, e) == -1);
    }
    auto a = T() - E("p0") - 2 * Ep(1), b = T() - E("p0") - 2 * Ep(2);
    CHECK(intersect(a, b) == pairing_oracle(a, b));
    CHECK(intersect(a, b) == 0);
    auto K = canonical_class(cfg());
    CHECK(intersect(K, K) == 9 - 11);
    CHECK(to_string(K) == "(-3; -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1)");
    auto empty = std::make_shared<BlowupConfiguration>();
    CHECK(canonical_class(empty) == -3 * DivisorClass::hyperplane(empty));

    auto other = std::make_shared<BlowupConfiguration>();
    other->add_point("q", PlanePoint::affine(0, 0));
    CHECK_THROWS_AS(intersect(DivisorClass::hyperplane(other), T()), ConfigurationError);
}

TEST_CASE("pairing is symmetric, bilinear, and D^2 + K.D is even")
{
    std::mt19937 rng(11);
    auto K = canonical_class(cfg());
    for (int n = 0; n < 200; ++n) {
        auto a = random_class(rng), b = random_class(rng), c = random_class(rng);
        CHECK(intersect(a, b) == intersect(b, a));
        CHECK(intersect(a, b) == pairing_oracle(a, b));
        CHECK(intersect(a + b, c) == intersect(a, c) + intersect(b, c));
        CHECK(intersect(3 * a, c) == 3 * intersect(a, c));
        CHECK((intersect(a, a) + intersect(K, a)) % 2 == 0);
        CHECK_NOTHROW(arithmetic_genus(a));
    }
}

TEST_CASE("arithmetic genus")
{
    auto line = T() - E("p0") - Ei(1) - Ep(1);
    CHECK(arithmetic_genus(line) == 0);
    CHECK(intersect(line, line) == -2);
    auto piece = Ei(1) - Ep(1);
    CHECK(arithmetic_genus(piece) == 0);
    CHECK(intersect(piece, piece) == -2);

    // Genus of the strict transform against degree genus minus the delta
    // invariant read from the resolution graphs.
    auto pts = parse_points(fixtures::P);
    for (const char* form : {fixtures::C6, fixtures::C7, fixtures::C3}) {
        auto c = PlaneCurve::parse(form);
        long d = c.degree();
        long g = (d - 1) * (d - 2) / 2;
        for (const auto& p : pts) {
            if (!c.contains(p))
                continue;
            for (const auto& node : resolution_graph(c, p).nodes)
                if (node.created >= 0)
                    g -= node.multiplicity * (node.multiplicity - 1) / 2;
        }
        CHECK(arithmetic_genus(strict_class(c, cfg())) == g);
    }
}

TEST_CASE("strict classes")
{
    CHECK(strict_class(PlaneCurve::parse(fixtures::line(1)), cfg()) == T() - E("p0") - Ei(1) - Ep(1));
    auto c6 = strict_class(PlaneCurve::parse(fixtures::C6), cfg());
    CHECK(c6 == DivisorClass(cfg(), 6, {2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1}));
    auto c3 = strict_class(PlaneCurve::parse(fixtures::C3), cfg());
    CHECK(c3 == 3 * T() - E("p0") - Ei(1) - Ep(1) - Ei(2) - Ep(2) - Ei(3) - Ep(3) - Ei(4) - Ei(5));
    CHECK(strict_class(PlaneCurve::parse("x+y+17*z"), cfg()) == T());
    CHECK(to_symbolic(c3) == "3T - E0 - E1 - E1' - E2 - E2' - E3 - E3' - E4 - E5");
}

TEST_CASE("halving")
{
    auto Dz = 6 * T() - 2 * E("p0") - 2 * (Ei(1) + Ep(1) + Ei(2) + Ep(2) + Ei(3) + Ep(3) + Ei(4) + Ep(4)) - 2 * Ep(5);
    auto Dw = 8 * T() - 4 * E("p0") - 2 * (Ei(1) + Ep(1) + Ei(2) + Ep(2) + Ei(3) + Ep(3)) - 2 * Ei(4) - 4 * Ep(4) -
              2 * Ei(5) - 2 * Ep(5);
    auto L = halve(Dz + Dw);
    CHECK(L == DivisorClass(cfg(), 7, {3, 2, 2, 2, 2, 2, 2, 2, 3, 1, 2}));
    CHECK(L == row("11-1-1"));
    CHECK(halve(2 * E("p0")) == E("p0"));
    CHECK_THROWS_AS(halve(T()), NotTwoDivisibleError);
    CHECK(row("-1111") == T() - E("p0") - Ep(1) - Ep(3));
    CHECK(row("-1111").row() == fixtures::table()[0].second);
}

TEST_CASE("catalog entries are smooth rational negative curves")
{
    CHECK(cat().entries().size() == 15);
    for (const auto& e : cat().entries()) {
        long s = intersect(e.cls, e.cls);
        CHECK(s < 0);
        CHECK(arithmetic_genus(e.cls) == 0);
    }
    NegativeCurveCatalog c(cfg());
    // both conics are tangent to the horizontal direction at p5 or pass
    // through p3 by the mirror symmetry x -> -x
    CHECK(c.add_strict("Q5", PlaneCurve::parse(fixtures::conic_five)).cls ==
          2 * T() - Ei(1) - Ei(2) - Ei(3) - Ei(4) - Ei(5) - Ep(5));
    CHECK(c.add_strict("Qt", PlaneCurve::parse(fixtures::conic_tangent)).cls ==
          2 * T() - Ei(1) - Ep(1) - Ei(2) - Ep(2) - Ei(3) - Ei(4));
    CHECK_THROWS_AS(c.add_strict("C3", PlaneCurve::parse(fixtures::C3)), ConfigurationError);
    CHECK_THROWS_AS(c.add_exceptional("E1", cfg()->index("p1")), ConfigurationError);
}

TEST_CASE("h0 with fixed-part reduction")
{
    auto K = canonical_class(cfg());

    auto r1 = h0(K + row("11-1-1"), cat());
    CHECK(r1.computable);
    CHECK(r1.dimension == 1);
    CHECK(r1.fixed == T() - E("p0") - 2 * Ep(4) + Ei(5) - Ep(5));
    CHECK(r1.moving == 3 * T() - E("p0") - Ei(1) - Ep(1) - Ei(2) - Ep(2) - Ei(3) - Ep(3) - Ei(4) - Ei(5));
    REQUIRE(r1.sections.size() == 1);
    CHECK(to_string(r1.sections[0]) == fixtures::C3);

    auto r2 = h0(K + row("1-1-1-1"), cat());
    CHECK(r2.computable);
    CHECK(r2.dimension == 0);
    CHECK(r2.fixed == T() - E("p0") - 2 * Ep(2) + T() - E("p0") - 2 * Ep(3) + T() - E("p0") - 2 * Ep(4) + Ei(5) - Ep(5));
    CHECK(r2.moving == 2 * T() - Ei(1) - Ep(1) - Ei(2) - Ei(3) - Ei(4) - Ei(5));

    auto r3 = h0(K + row("11-11"), cat());
    CHECK(K + row("11-11") == Ei(5));
    CHECK(r3.dimension == 1);
    CHECK(r3.fixed == Ei(5));
    CHECK(r3.moving.is_zero());

    auto r4 = h0(K + row("-1111"), cat());
    CHECK((K + row("-1111")).degree() == -2);
    CHECK(r4.dimension == 0);

    std::vector<int> expected{0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0};
    for (std::size_t i = 0; i < fixtures::table().size(); ++i) {
        auto r = h0(K + row(fixtures::table()[i].first), cat());
        CHECK(r.computable);
        CHECK(r.dimension == expected[i]);
    }
}

TEST_CASE("h0 is monotone under adding catalog curves")
{
    auto K = canonical_class(cfg());
    for (const char* label : {"11-11", "111-1", "11-1-1", "-11-1-1"}) {
        auto D = K + row(label);
        int base = h0(D, cat()).dimension;
        for (const char* n : {"E0", "E5'", "T4", "E1-E1'"})
            CHECK(base <= h0(D + cat().find(n)->cls, cat()).dimension);
    }
}

TEST_CASE("h0 reports classes it cannot decide")
{
    auto K = canonical_class(cfg());
    // a negative multiple of an exceptional class with nothing to remove
    NegativeCurveCatalog empty(cfg());
    auto r = h0(T() + Ep(1), empty);
    CHECK_FALSE(r.computable);
    H0Options opts;
    opts.reduction_bound = 0;
    CHECK_THROWS_AS(h0(K + row("11-1-1"), cat(), opts), ReductionBoundError);
}
