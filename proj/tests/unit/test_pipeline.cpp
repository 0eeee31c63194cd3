#include "doctest.h"

#include "covkit/errors.hpp"
#include "covkit/pipeline.hpp"
#include "covkit/trace.hpp"
#include "../support/conditions.hpp"
#include "../support/curves.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace covkit;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        static std::atomic<int> n{0};
        path = fs::temp_directory_path() /
               ("covkit-test-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// A small scenario: one cubic search and a few plane checks.
const char* small_text = R"(name = small
[points]
p0 = 0 0
p1 = 2 2
p2 = -2 2
p3 = 3 1
p4 = -3 1
p5 = 0 5
P = p0 p1 p2 p3 p4 p5

[conditions]
M3 = [[1],[1,1],[1,1],[1,1],[1,0],[1,0]]
T = [[],[[1,1]],[[-1,1]],[[3,1]],[[-3,1]],[[1,0]]]

[curves]
C3 = linsys 3 P M3 T
T1 = line p0 p1

[checks]
irreducible C3
contains C3 p4

[expect]
reference curve.C3.sections = 1
reference irreducible.C3 = 1
derived contains.C3.p4 = true
)";

const VerificationReport& deg24()
{
    static const VerificationReport r = run_scenario(builtin_scenario("deg24"));
    return r;
}

std::string parse_message(const std::string& text)
{
    try {
        parse_scenario(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

bool rejects(const std::string& text)
{
    try {
        run_scenario(parse_scenario(text));
    } catch (const ValidationError&) {
        return true;
    }
    return false;
}

long genus_from_conditions(int d, const std::string& conditions)
{
    long g = static_cast<long>(d - 1) * (d - 2) / 2;
    for (const auto& point : nlohmann::json::parse(conditions))
        for (int m : point)
            g -= static_cast<long>(m) * (m - 1) / 2;
    return g;
}

const Golden* golden(const Scenario& s, const std::string& check)
{
    for (const auto& g : s.goldens)
        if (g.check == check)
            return &g;
    return nullptr;
}

} // namespace

TEST_CASE("parse errors carry line and column")
{
    auto m = parse_message("[points]\np0 = 0 0\n[bogus]\n");
    CHECK(m.rfind("3:", 0) == 0);
    CHECK(m.find("bogus") != std::string::npos);

    m = parse_message("[points]\np0 = 0 0\n[expect]\nreference curve.C.sections = [1,\n");
    CHECK(m.rfind("4:", 0) == 0);

    m = parse_message("[expect]\nguessed curve.C.sections = 1\n");
    CHECK(m.rfind("2:", 0) == 0);

    m = parse_message("p0 = 0 0\n");
    CHECK(m.rfind("1:", 0) == 0);

    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.scn"), Error);
}

TEST_CASE("validation errors are named")
{
    std::string base = small_text;
    CHECK_NOTHROW(plan_scenario(parse_scenario(base)));
    CHECK(rejects(base + "reference curve.C4.sections = 1\n"));
    CHECK(rejects(base + "reference curve.C3.sections = \"one\"\n"));
    CHECK(rejects(base + "reference irreducible.C3 = true\n"));
    CHECK(rejects(base + "[checks]\nirreducible C9\n"));
    CHECK(rejects(base + "[assume]\nmoonlight = C3\n"));
    CHECK(rejects(std::string(small_text) + "[curves]\nC4 = linsys 4 P M9 T\n"));
    try {
        run_scenario(parse_scenario(base + "reference curve.C4.sections = 1\n"));
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("curve.C4.sections") != std::string::npos);
    }
    CHECK_THROWS_AS(builtin_scenario("nope"), ValidationError);
}

TEST_CASE("empty scenario passes with zero checks")
{
    auto r = run_scenario(parse_scenario(""));
    CHECK(r.checks.empty());
    CHECK(r.pass());
    CHECK(r.assumed().empty());
    CHECK(emit(r, Format::text).find("verdict: pass") != std::string::npos);
}

TEST_CASE("built-in scenario matches the shipped file")
{
    CHECK(builtin_scenarios() == std::vector<std::string>{"deg24"});
    CHECK(builtin_text("deg24") == slurp(fs::path(COVKIT_SOURCE_DIR) / "scenarios" / "deg24.scn"));
    CHECK(builtin_scenario("deg24").name == "deg24");
}

TEST_CASE("derived goldens agree with independent formulas")
{
    auto s = builtin_scenario("deg24");
    // Arithmetic genus of a strict transform: (d-1)(d-2)/2 minus the
    // multiplicity contributions at every blown-up center.
    const std::string M1 = "[[2],[2,2],[2,2],[2,2],[2,2],[1,1]]";
    const std::string M2 = "[[3],[2,2],[2,2],[2,2],[2,2],[2,2]]";
    const std::string Mt = "[[0],[1,1],[1,1],[0],[1],[0]]";
    CHECK(golden(s, "genus.C6")->value == genus_from_conditions(6, M1));
    CHECK(golden(s, "genus.C7")->value == genus_from_conditions(7, M2));
    CHECK(golden(s, "genus.C3")->value == genus_from_conditions(3, fixtures::M3));
    CHECK(golden(s, "genus.Qt")->value == genus_from_conditions(2, Mt));
    for (const auto& g : s.goldens)
        CHECK((g.provenance == "reference" || g.provenance == "derived"));

    // Q is the double cover of X branched on the pieces where z is nontrivial,
    // so chi(O_Q) = 2 + (L^2 + K.L)/2 with L the row of the character 11-11.
    auto L = golden(s, "sheet.11-11")->value.get<std::vector<long>>();
    long L2 = L[0] * L[0], KL = -3 * L[0];
    for (std::size_t i = 1; i < L.size(); ++i) {
        L2 -= L[i] * L[i];
        KL -= L[i];
    }
    CHECK(golden(s, "euler.Q")->value == 2 + (L2 + KL) / 2);
    // h0(K_X) = 0 on a rational surface, so p_g(Q) = h0(K_X + L).
    CHECK(golden(s, "pg.Q")->value == golden(s, "h0.11-11")->value);
    CHECK(golden(s, "q.Q")->value.get<long>() ==
          golden(s, "pg.Q")->value.get<long>() + 1 - golden(s, "euler.Q")->value.get<long>());
    CHECK(golden(s, "q.U")->value.get<long>() ==
          golden(s, "pg.U")->value.get<long>() + 1 - golden(s, "euler.U")->value.get<long>());
}

TEST_CASE("deg24 run reproduces the construction")
{
    const auto& r = deg24();
    CHECK(r.pass());
    CHECK(r.missing().empty());
    CHECK(r.find("pg.Y")->computed == 3);
    CHECK(r.find("q.Y")->computed == 0);
    CHECK(r.find("K2.Y.minimal")->computed == 24);
    CHECK(r.find("degree.Y")->computed == 24);
    CHECK(r.find("degree.U")->computed == 6);
    REQUIRE(r.ledger);
    CHECK(r.ledger->degree == 24);
    CHECK(r.ledger->factor * r.ledger->base_degree == 24);
    auto assumed = r.assumed();
    std::sort(assumed.begin(), assumed.end());
    CHECK(assumed == std::vector<std::string>{"assume.isolated-fixed-points", "assume.nef-pullback"});
    for (const auto& c : r.checks)
        CHECK_MESSAGE(c.status != Status::fail, c.name);
}

TEST_CASE("text emission lists the three curves verbatim")
{
    auto text = emit(deg24(), Format::text);
    for (const char* f : {fixtures::C6, fixtures::C7, fixtures::C3})
        CHECK(text.find(std::string("\"") + f + "\"") != std::string::npos);
    CHECK(text.find("verdict: pass") != std::string::npos);
}

TEST_CASE("structured emission round-trips")
{
    const auto& r = deg24();
    for (bool timings : {false, true}) {
        EmitOptions o;
        o.timings = timings;
        auto back = report_from_json(Json::parse(emit(r, Format::structured, o)));
        CHECK(back == r);
        CHECK(back.pass() == r.pass());
        CHECK(back.assumed() == r.assumed());
    }
    auto j = to_json(r);
    CHECK(j.contains("checks"));
    CHECK_FALSE(j.contains("diagnostics"));
    CHECK(j["checks"]["pg.Y"]["status"] == "pass");
    CHECK(j["checks"]["pg.Y"]["computed"] == 3);
    CHECK(j["checks"]["pg.Y"]["expected"] == 3);
    CHECK(j["checks"]["pg.Y"]["provenance"] == "reference");
}

TEST_CASE("cache, determinism and coverage on deg24")
{
    TempDir dir;
    RunOptions o;
    o.cache_dir = dir.path;
    auto curve_hits = [](const VerificationReport& r) {
        std::vector<std::string> out;
        for (const auto& h : r.cache_hits)
            if (h.rfind("curve.", 0) == 0)
                out.push_back(h);
        return out;
    };

    auto first = run_scenario(builtin_scenario("deg24"), o);
    CHECK(curve_hits(first).empty());
    CHECK(fs::exists(SolutionCache(dir.path, builtin_text("deg24")).file()));
    // a cold run followed by emission touches every operation
    auto cold = emit(first, Format::structured);
    auto ops = recorded_ops();
    for (const auto& op : all_ops())
        CHECK_MESSAGE(std::find(ops.begin(), ops.end(), op) != ops.end(), op);

    auto second = run_scenario(builtin_scenario("deg24"), o);
    auto hits = curve_hits(second);
    for (const char* c : {"curve.C6.sections", "curve.C7.sections", "curve.C3.sections"})
        CHECK(std::count(hits.begin(), hits.end(), c) == 1);
    ops = recorded_ops();
    CHECK(std::find(ops.begin(), ops.end(), "linear_system") == ops.end());

    auto plain = emit(deg24(), Format::structured);
    CHECK(cold == plain);
    CHECK(emit(second, Format::structured) == plain);
    CHECK(second == deg24());
}

TEST_CASE("cache misses, corruption and modified scenarios")
{
    TempDir dir;
    RunOptions o;
    o.cache_dir = dir.path;
    std::vector<std::string> warnings;
    o.warn = [&](const std::string& w) { warnings.push_back(w); };

    auto s = parse_scenario(small_text);
    auto a = run_scenario(s, o);
    CHECK(a.pass());
    CHECK(a.cache_hits.empty());
    SolutionCache probe(dir.path, small_text);
    REQUIRE(fs::exists(probe.file()));
    auto stored = nlohmann::json::parse(slurp(probe.file()));
    CHECK(stored["scenario"].get<std::string>().size() == 16);

    auto b = run_scenario(s, o);
    CHECK(b.cache_hits == std::vector<std::string>{"curve.C3.sections"});
    CHECK(b == a);

    std::ofstream(probe.file()) << "{ not json";
    auto c = run_scenario(s, o);
    CHECK(warnings.size() == 1);
    CHECK(c.warnings.size() == 1);
    CHECK(c.cache_hits.empty());
    CHECK(c == a);
    CHECK(nlohmann::json::parse(slurp(probe.file())).is_object());

    auto changed = parse_scenario(std::string("# edited\n") + small_text);
    CHECK(fnv1a(changed.text) != fnv1a(s.text));
    auto d = run_scenario(changed, o);
    CHECK(d.cache_hits.empty());
    CHECK(d == a);
    CHECK(std::distance(fs::directory_iterator(dir.path), fs::directory_iterator{}) == 2);

    // no directory: nothing is read or written
    TempDir none;
    RunOptions off;
    auto e = run_scenario(s, off);
    CHECK(e.cache_hits.empty());
    CHECK(e == a);
    CHECK_FALSE(fs::exists(none.path));
    CHECK_FALSE(SolutionCache().enabled());
}

TEST_CASE("fnv1a reference values")
{
    CHECK(fnv1a("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cull);
    CHECK(fnv1a("foobar") == 0x85944171f73967e8ull);
}

TEST_CASE("moving p5 breaks the construction with named mismatches")
{
    std::string text = builtin_text("deg24");
    auto at = text.find("p5 = 0 5\n");
    REQUIRE(at != std::string::npos);
    text.replace(at, 9, "p5 = 0 4\n");
    auto r = run_scenario(parse_scenario(text));
    CHECK_FALSE(r.pass());
    for (const char* name : {"curve.C6.form", "curve.C7.sections", "curve.C3.form", "curve.Q5.form"}) {
        const auto* c = r.find(name);
        REQUIRE(c);
        CHECK(c->status == Status::fail);
        CHECK(c->detail == "golden mismatch");
    }
    CHECK_FALSE(r.missing().empty());
    CHECK(emit(r, Format::text).find("verdict: fail") != std::string::npos);
}

TEST_CASE("status strings")
{
    for (auto s : {Status::pass, Status::fail, Status::assumed, Status::skipped})
        CHECK(parse_status(to_string(s)) == s);
    CHECK_THROWS(parse_status("maybe"));
}
