// Runs the built-in construction and the property suites, printing one line
// per acceptance criterion.  Exits nonzero if any criterion fails.

#include "covkit/covers.hpp"
#include "covkit/curves.hpp"
#include "covkit/factor.hpp"
#include "covkit/pipeline.hpp"
#include "../support/curves.hpp"
#include "../support/table.hpp"

#include <functional>
#include <iostream>
#include <random>

using namespace covkit;

namespace {

// Collects the failed sub-checks of one criterion.
struct Criterion {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        if (!ok)
            failures.push_back(what);
    }
};

class Checker {
public:
    explicit Checker(const VerificationReport& r) : r_(r) {}

    // The check is present, passed, and its computed value is v.
    void is(Criterion& c, const std::string& name, const Json& v) const
    {
        const auto* rec = r_.find(name);
        if (!rec) {
            c.expect(false, name + " missing");
            return;
        }
        c.expect(rec->status == Status::pass, name + " is " + to_string(rec->status));
        c.expect(rec->computed == v, name + " = " + rec->computed.dump() + ", want " + v.dump());
    }

private:
    const VerificationReport& r_;
};

MultiPoly poly(const std::string& s) { return parse_poly(s, plane_vars()); }

// --- property suites -------------------------------------------------------

void bezout_suite(Criterion& c)
{
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> coef(-6, 6);
    int audited = 0;
    for (int trial = 0; trial < 60 && audited < 8; ++trial) {
        PlanePoint a = PlanePoint::affine(coef(rng), coef(rng)), b = PlanePoint::affine(coef(rng), coef(rng));
        PlanePoint p = PlanePoint::affine(coef(rng), coef(rng)), q = PlanePoint::affine(coef(rng), coef(rng));
        if (a == b || p == q)
            continue;
        auto l1 = linear_system(1, {{a, {1}, {}}, {b, {1}, {}}});
        auto l2 = linear_system(1, {{p, {1}, {}}, {q, {1}, {}}});
        if (l1.size() != 1 || l2.size() != 1 || l1[0] == l2[0])
            continue;
        // a cubic through the four chosen points against the two lines
        PlaneCurve lines(l1[0] * l2[0]);
        std::vector<SingularityCondition> through;
        for (const auto& s : {a, b, p, q})
            through.push_back({s, {1}, {}});
        auto cubics = linear_system(3, through);
        MultiPoly f(plane_vars());
        for (const auto& g : cubics)
            f += g * Rational(coef(rng));
        if (f.is_zero())
            continue;
        PlaneCurve cubic(f);
        if (!is_coprime(cubic, lines))
            continue;
        auto s = common_points({cubic, lines});
        // only fully rational intersections are audited
        if (!s.components.empty())
            continue;
        long total = 0;
        for (const auto& x : s.points)
            total += intersection_multiplicity(cubic, lines, x);
        c.expect(total == 6, "Bezout sum " + std::to_string(total) + " for " + to_string(cubic.form()));
        ++audited;
    }
    c.expect(audited >= 4, "only " + std::to_string(audited) + " Bezout audits");
}

void factor_suite(Criterion& c)
{
    std::mt19937 rng(43);
    std::uniform_int_distribution<int> coef(-9, 9), dg(1, 4), nf(1, 4);
    auto nonzero = [&]() {
        int v = 0;
        while (v == 0)
            v = coef(rng);
        return v;
    };
    for (int trial = 0; trial < 25; ++trial) {
        UPoly prod{Rational(nonzero())};
        for (int i = 0, k = nf(rng); i < k; ++i) {
            std::vector<Rational> cs;
            for (int j = 0, d = dg(rng); j < d; ++j)
                cs.emplace_back(coef(rng));
            cs.emplace_back(nonzero());
            prod = prod * UPoly(cs);
        }
        auto f = uni_factor(prod);
        c.expect(f.expand() == prod, "factorization does not expand back to " + to_string(prod));
        for (const auto& [p, e] : f.factors)
            c.expect(is_irreducible(p) && e >= 1, "reducible factor " + to_string(p));
    }
}

void intersection_suite(Criterion& c)
{
    std::mt19937 rng(47);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto germ = [&](int d) {
        MultiPoly f(plane_vars());
        for (int i = 0; i <= d; ++i)
            for (int j = 0; i + j <= d; ++j)
                if (i + j >= 2 || coef(rng) > 1)
                    f.add_term({i, j, d - i - j}, coef(rng));
        return f;
    };
    int agreed = 0;
    for (int trial = 0; trial < 80 && agreed < 25; ++trial) {
        MultiPoly f = germ(3), g = germ(4);
        if (f.is_zero() || g.is_zero())
            continue;
        PlaneCurve a(f), b(g);
        if (!is_coprime(a, b))
            continue;
        PlanePoint o(0, 0, 1);
        int x = intersection_multiplicity_blowup(a, b, o);
        int y = intersection_multiplicity_resultant(a, b, o);
        c.expect(x == y, "methods disagree on " + to_string(f) + ", " + to_string(g));
        ++agreed;
    }
    c.expect(agreed >= 20, "only " + std::to_string(agreed) + " intersection instances");
}

void double_cover_suite(Criterion& c)
{
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> deg(1, 5), coef(1, 9);
    ConfigPtr plane = std::make_shared<BlowupConfiguration>();
    NegativeCurveCatalog none(plane);
    MultiPoly x = MultiPoly::variable(plane_vars(), 0), y = MultiPoly::variable(plane_vars(), 1),
              z = MultiPoly::variable(plane_vars(), 2);
    for (int n = 0; n < 3; ++n) {
        int d = deg(rng);
        // a Fermat-type curve of degree 2d is smooth
        MultiPoly f = x.pow(2 * d) * Rational(coef(rng)) + y.pow(2 * d) * Rational(coef(rng)) + z.pow(2 * d);
        BuildingData data(plane, {"s"});
        data.assign(1, {strict_piece("B", PlaneCurve(f), plane)});
        auto sheet = solve_character_sheet(data);
        long L2 = d * d, KL = -3 * d;
        long chi = 2 + (L2 + KL) / 2;
        long pg = d >= 3 ? (d - 1) * (d - 2) / 2 : 0;
        long K2 = 2 * (d - 3) * (d - 3);
        std::string tag = "double plane of degree " + std::to_string(2 * d);
        c.expect(euler_characteristic(data, sheet).chi == chi, tag + ": chi");
        c.expect(geometric_genus(data, sheet, none).pg == pg, tag + ": p_g");
        c.expect(canonical_on_cover(data, sheet, 1).K2 == K2, tag + ": K^2");
    }
}

// --- output ----------------------------------------------------------------

int report(int n, const std::string& title, const std::function<void(Criterion&)>& body)
{
    Criterion c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.failures.push_back(std::string("error: ") + e.what());
    }
    std::cout << "criterion " << n << ": " << (c.failures.empty() ? "PASS" : "FAIL") << "  " << title << "\n";
    for (const auto& f : c.failures)
        std::cout << "    " << f << "\n";
    return c.failures.empty() ? 0 : 1;
}

} // namespace

int main()
{
    auto scenario = builtin_scenario("deg24");
    auto run = run_scenario(scenario);
    Checker k(run);
    int failed = 0;

    failed += report(1, "curve reproduction", [&](Criterion& c) {
        for (auto [name, form] : {std::pair{"C6", fixtures::C6}, {"C7", fixtures::C7}, {"C3", fixtures::C3}}) {
            k.is(c, std::string("curve.") + name + ".sections", 1);
            k.is(c, std::string("curve.") + name + ".form", form);
        }
    });

    failed += report(2, "character sheet", [&](Criterion& c) {
        for (const auto& [label, row] : fixtures::table())
            k.is(c, "sheet." + label, row);
    });

    failed += report(3, "invariants", [&](Criterion& c) {
        k.is(c, "euler.Y", 4);
        k.is(c, "euler.Y.terms", std::vector<long>{16, -1, -1, -1, 0, -1, -1, -1, 0, -1, -1, -1, 0, -1, -1, -1});
        k.is(c, "pg.Y", 3);
        k.is(c, "q.Y", 0);
        k.is(c, "euler.U", 4);
        k.is(c, "pg.U", 3);
    });

    failed += report(4, "intersection ledger", [&](Criterion& c) {
        k.is(c, "pairing.xi1.xi1", -48);
        k.is(c, "pairing.xi1.xi2", 0);
        k.is(c, "pairing.xi1.pC", 0);
        k.is(c, "pairing.pC.pC", 0);
        k.is(c, "pairing.xi2.pC", 24);
        k.is(c, "K2.Y", -48);
        k.is(c, "K2.Y.minimal", 24);
        k.is(c, "K2.U.canonical", 6);
        k.is(c, "pairing.A1.A1", -8);
        // four (-2)-curves make up the Kummer class
        k.is(c, "family.A1", 4);
    });

    failed += report(5, "h0 computations", [&](Criterion& c) {
        for (const auto& [label, row] : fixtures::table()) {
            (void)row;
            bool one = label == "11-1-1" || label == "11-11" || label == "111-1";
            k.is(c, "h0." + label, one ? 1 : 0);
        }
        k.is(c, "h0.11-1-1.fixed", "T - E0 - 2E4' + E5 - E5'");
        k.is(c, "h0.1-1-1-1.fixed", "3T - 3E0 - 2E2' - 2E3' - 2E4' + E5 - E5'");
        k.is(c, "h0.1-1-1-1.sections", Json::array());
        // the only conic through p1..p5 is not tangent to T1 at p1
        k.is(c, "curve.Q5.form", to_string(canonical(poly("-12*x^2+11*y^2-93*y*z+190*z^2"))));
        k.is(c, "tangent.Q5.T1.p1", false);
    });

    failed += report(6, "geometry audits", [&](Criterion& c) {
        Json all = {"p0", "p1", "p2", "p3", "p4", "p5"};
        k.is(c, "singular.B", all);
        k.is(c, "singular.B.extension", false);
        k.is(c, "classify.C7.p0", "ordinary_triple [1,0]");
        k.is(c, "classify.C6.p0", "node");
        const char* dirs[] = {"", "[1,1]", "[1,-1]", "[1,1/3]", "[1,-1/3]", "[1,0]"};
        for (int i = 1; i <= 5; ++i) {
            std::string p = "p" + std::to_string(i);
            k.is(c, "classify.C7." + p, std::string("tacnode ") + dirs[i]);
            if (i < 5)
                k.is(c, "classify.C6." + p, std::string("tacnode ") + dirs[i]);
        }
        k.is(c, "resolve.B", std::vector<int>{1, 2, 2, 2, 2, 2});
        k.is(c, "common.K1.C7.K3", all);
        MultiPoly cone = poly("y") * poly("x+3*y") * poly("17*x+240*y") * poly("289*x^2+82080*y^2") *
                         poly("1587545*x^2+40585383*y^2");
        k.is(c, "tangent_cone.W.p0", to_string(canonical(cone)));
        k.is(c, "contains.Qt.p5", false);
    });

    failed += report(7, "absolute irreducibility", [&](Criterion& c) {
        for (const char* n : {"C6", "C7", "C3"})
            k.is(c, std::string("irreducible.") + n, 1);
    });

    failed += report(8, "final ledger", [&](Criterion& c) {
        k.is(c, "degree.U", 6);
        k.is(c, "degree.Y", 24);
        c.expect(run.ledger && run.ledger->base_degree == 6 && run.ledger->factor == 4 && run.ledger->degree == 24,
                 "degree ledger is not 4 x 6 = 24");
        c.expect(run.pass(), "verdict is not pass");
        c.expect(run.assumed().size() == 2, std::to_string(run.assumed().size()) + " assumed entries");
        c.expect(emit(run, Format::text).find("verdict: pass") != std::string::npos, "text report lacks the verdict");
    });

    failed += report(9, "property suites", [&](Criterion& c) {
        bezout_suite(c);
        factor_suite(c);
        intersection_suite(c);
        double_cover_suite(c);
        auto again = run_scenario(scenario);
        c.expect(emit(again, Format::structured) == emit(run, Format::structured),
                 "structured reports differ between runs");
    });

    return failed == 0 ? 0 : 1;
}
