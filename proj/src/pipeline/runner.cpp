#include "covkit/errors.hpp"
#include "covkit/pipeline.hpp"
#include "covkit/trace.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace covkit {

namespace {

enum class Kind { integer, boolean, string, integer_list, string_list, object };

const char* kind_name(Kind k)
{
    switch (k) {
    case Kind::integer:
        return "integer";
    case Kind::boolean:
        return "boolean";
    case Kind::string:
        return "string";
    case Kind::integer_list:
        return "integer list";
    case Kind::string_list:
        return "string list";
    case Kind::object:
        break;
    }
    return "object";
}

bool matches(Kind k, const Json& v)
{
    auto all = [&](auto pred) { return v.is_array() && std::all_of(v.begin(), v.end(), pred); };
    switch (k) {
    case Kind::integer:
        return v.is_number_integer();
    case Kind::boolean:
        return v.is_boolean();
    case Kind::string:
        return v.is_string();
    case Kind::integer_list:
        return all([](const Json& e) { return e.is_number_integer(); });
    case Kind::string_list:
        return all([](const Json& e) { return e.is_string(); });
    case Kind::object:
        break;
    }
    return v.is_object();
}

// A dependency that could not be produced; the check is skipped.
struct Unavailable {
    std::string reason;
};

struct Outcome {
    Outcome(Json v, bool good = true, std::string why = {}) : value(std::move(v)), ok(good), detail(std::move(why)) {}
    Json value;
    bool ok;
    std::string detail;
};

struct Datum {
    std::string parent;
    std::vector<GroupElement> subgroup;
    std::optional<BuildingData> data;
    std::string broken;
    Character chi0 = 0;
    bool has_canonical = false;
    std::optional<CharacterSheet> sheet;
    std::optional<GenusResult> genus;
    std::optional<CanonicalResult> canonical;
    std::vector<CurveFamily> families;
};

struct Handle {
    std::string datum;
    bool half = false;
    std::vector<std::string> parts;
    std::optional<CoverClass> cls;
    std::string broken;
};

std::string join(const std::vector<std::string>& v, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + v[i];
    return s;
}

Rational parse_rational(const std::string& w)
{
    try {
        Rational q(w);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ValidationError("not a rational number: " + w);
    }
}

bool is_rational(const std::string& w)
{
    return !w.empty() && w.find_first_not_of("0123456789-/") == std::string::npos &&
           w.find_first_of("0123456789") != std::string::npos;
}

std::string condition_key(int degree, const std::vector<SingularityCondition>& conds)
{
    std::string k = "linsys " + std::to_string(degree);
    for (const auto& c : conds) {
        k += " " + to_string(c.point) + " m";
        for (int m : c.multiplicities)
            k += std::to_string(m) + ",";
        k += " d";
        for (const auto& d : c.directions)
            k += to_string(d);
    }
    return k;
}

class Runner {
public:
    enum class Mode { dry, run, describe };

    Runner(const Scenario& sc, const RunOptions& opt, Mode mode) : sc_(sc), opt_(opt), mode_(mode)
    {
        for (const auto& g : sc.goldens) {
            if (goldens_.count(g.check))
                throw ValidationError("line " + std::to_string(g.line) + ": second golden for " + g.check);
            goldens_[g.check] = &g;
        }
        for (const auto& a : sc.assumptions) {
            bool known = false;
            for (const auto& [k, _] : known_assumptions())
                known = known || k == a.key;
            if (!known)
                throw ValidationError("line " + std::to_string(a.line) + ": unknown assumption " + a.key);
            if (assumed_.count(a.key))
                throw ValidationError("line " + std::to_string(a.line) + ": assumption " + a.key + " repeated");
            assumed_[a.key] = a.target;
        }
        if (mode_ != Mode::dry && !opt.cache_dir.empty())
            cache_ = SolutionCache(opt.cache_dir, sc.text, [this](const std::string& w) {
                report.warnings.push_back(w);
                if (opt_.warn)
                    opt_.warn(w);
            });
        report.scenario = sc.name;
    }

    void run()
    {
        std::string section;
        for (const auto& st : sc_.statements) {
            if (st.section != section)
                finish(section);
            section = st.section;
            line_ = st.line;
            statement(st);
        }
        finish(section);
        validate_assumptions();
        if (mode_ == Mode::dry)
            validate_goldens();
        if (mode_ != Mode::dry)
            cache_.flush();
    }

    std::string describe() const;

    VerificationReport report;
    std::vector<std::pair<std::string, Kind>> plan;

private:
    const Scenario& sc_;
    const RunOptions& opt_;
    Mode mode_;
    int line_ = 0;
    std::map<std::string, const Golden*> goldens_;
    std::map<std::string, std::string> assumed_;
    std::set<std::string> names_;
    SolutionCache cache_;
    std::string label_;

    std::map<std::string, PlanePoint> points_;
    std::vector<std::string> point_order_;
    std::map<std::string, std::vector<std::string>> point_lists_;
    std::map<std::string, std::string> conditions_;
    std::map<std::string, std::optional<PlaneCurve>> curves_;
    std::map<std::string, std::string> curve_broken_;
    std::vector<std::string> curve_order_;

    std::shared_ptr<BlowupConfiguration> building_ = std::make_shared<BlowupConfiguration>();
    ConfigPtr config_;
    std::optional<NegativeCurveCatalog> catalog_;
    std::set<std::string> catalog_names_;
    std::string catalog_broken_;
    bool catalog_ok_ = true;

    std::string top_;
    std::vector<std::string> generators_;
    std::vector<const Statement*> cover_;
    std::map<std::string, Datum> datums_;
    std::vector<std::string> datum_order_;
    std::map<std::string, Handle> handles_;

    [[noreturn]] void invalid(const std::string& msg) const
    {
        throw ValidationError("line " + std::to_string(line_) + ": " + msg);
    }

    bool computing() const { return mode_ != Mode::dry; }

    // -- checks -------------------------------------------------------------

    template <class F> void check(const std::string& name, Kind kind, F&& compute)
    {
        if (!names_.insert(name).second)
            invalid("check " + name + " produced twice");
        plan.emplace_back(name, kind);
        if (mode_ != Mode::run)
            return;
        if (opt_.progress)
            opt_.progress(name);
        CheckRecord rec;
        rec.name = name;
        auto g = goldens_.find(name);
        if (g != goldens_.end()) {
            rec.expected = g->second->value;
            rec.provenance = g->second->provenance;
        }
        auto start = std::chrono::steady_clock::now();
        try {
            label_ = name;
            Outcome out = compute();
            rec.computed = out.value;
            rec.detail = out.detail;
            bool agree = !rec.expected || *rec.expected == rec.computed;
            rec.status = out.ok && agree ? Status::pass : Status::fail;
            if (!agree && rec.detail.empty())
                rec.detail = "golden mismatch";
        } catch (const Unavailable& u) {
            rec.status = Status::skipped;
            rec.detail = u.reason;
        } catch (const std::exception& e) {
            rec.status = Status::fail;
            rec.detail = "error: " + std::string(e.what());
        }
        rec.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        report.checks.push_back(std::move(rec));
    }

    void assumption(const std::string& key, const std::function<Outcome()>& inputs)
    {
        std::string name = "assume." + key;
        if (!names_.insert(name).second)
            return;
        plan.emplace_back(name, Kind::object);
        if (mode_ != Mode::run)
            return;
        CheckRecord rec;
        rec.name = name;
        rec.provenance = "assumption";
        try {
            auto out = inputs();
            rec.computed = out.value;
            rec.status = out.ok ? Status::assumed : Status::fail;
            for (const auto& [k, s] : known_assumptions())
                if (k == key)
                    rec.detail = out.ok ? s : s + "; inputs do not hold: " + out.detail;
        } catch (const Unavailable& u) {
            rec.status = Status::skipped;
            rec.detail = u.reason;
        }
        report.checks.push_back(std::move(rec));
    }

    // Object construction outside a named check; failures become records.
    template <class F> bool build(const std::string& what, std::string& broken, F&& fn)
    {
        if (!computing())
            return false;
        try {
            fn();
            return true;
        } catch (const Unavailable& u) {
            broken = u.reason;
        } catch (const std::exception& e) {
            broken = what + ": " + e.what();
            if (mode_ == Mode::run) {
                CheckRecord rec;
                rec.name = "error." + what;
                rec.status = Status::fail;
                rec.detail = e.what();
                report.checks.push_back(std::move(rec));
            }
        }
        return false;
    }

    void validate_goldens()
    {
        std::map<std::string, Kind> kinds(plan.begin(), plan.end());
        for (const auto& g : sc_.goldens) {
            auto it = kinds.find(g.check);
            if (it == kinds.end())
                throw ValidationError("line " + std::to_string(g.line) + ": no check named " + g.check);
            if (!matches(it->second, g.value))
                throw ValidationError("line " + std::to_string(g.line) + ": " + g.check + " expects " +
                                      kind_name(it->second));
        }
    }

    void validate_assumptions()
    {
        for (const auto& a : sc_.assumptions) {
            line_ = a.line;
            if (a.key == "nef-pullback" && !handles_.count(a.target))
                invalid("nef-pullback names undeclared handle " + a.target);
            if (a.key == "isolated-fixed-points" && (!datums_.count(a.target) || datums_.at(a.target).parent.empty()))
                invalid("isolated-fixed-points needs a quotient, not " + a.target);
        }
    }

    // -- lookups ------------------------------------------------------------

    const PlanePoint& point(const std::string& n) const
    {
        auto it = points_.find(n);
        if (it == points_.end())
            invalid("undeclared point " + n);
        return it->second;
    }

    std::vector<std::string> points_of(const std::string& n) const
    {
        if (points_.count(n))
            return {n};
        auto it = point_lists_.find(n);
        if (it == point_lists_.end())
            invalid("undeclared point or point list " + n);
        return it->second;
    }

    void require_curve(const std::string& n) const
    {
        if (!curves_.count(n))
            invalid("undeclared curve " + n);
    }

    const PlaneCurve& curve(const std::string& n) const
    {
        require_curve(n);
        const auto& c = curves_.at(n);
        if (!c) {
            auto b = curve_broken_.find(n);
            throw Unavailable{"curve " + n + " unavailable" + (b == curve_broken_.end() ? "" : ": " + b->second)};
        }
        return *c;
    }

    std::string point_name(const PlanePoint& p) const
    {
        for (const auto& n : point_order_)
            if (points_.at(n) == p)
                return n;
        return to_string(p);
    }

    Json point_names(const std::vector<PlanePoint>& pts) const
    {
        std::vector<std::pair<std::size_t, std::string>> v;
        for (const auto& p : pts) {
            auto n = point_name(p);
            auto it = std::find(point_order_.begin(), point_order_.end(), n);
            v.emplace_back(static_cast<std::size_t>(it - point_order_.begin()), n);
        }
        std::sort(v.begin(), v.end());
        Json out = Json::array();
        for (auto& [_, n] : v)
            out.push_back(n);
        return out;
    }

    const NegativeCurveCatalog& catalog() const
    {
        if (!catalog_ || !catalog_ok_)
            throw Unavailable{"catalog unavailable" + (catalog_broken_.empty() ? "" : ": " + catalog_broken_)};
        return *catalog_;
    }

    Datum& datum(const std::string& n)
    {
        auto it = datums_.find(n);
        if (it == datums_.end())
            invalid("undeclared cover " + n);
        return it->second;
    }

    const BuildingData& data_of(Datum& d, const std::string& n)
    {
        if (!d.data)
            throw Unavailable{"cover " + n + " unavailable" + (d.broken.empty() ? "" : ": " + d.broken)};
        return *d.data;
    }

    const CharacterSheet& sheet(const std::string& n)
    {
        auto& d = datum(n);
        if (!d.sheet)
            d.sheet = solve_character_sheet(data_of(d, n));
        return *d.sheet;
    }

    H0Options h0_options()
    {
        H0Options o;
        o.solver = [this](int degree, const std::vector<SingularityCondition>& c) { return solve(degree, c); };
        return o;
    }

    const GenusResult& genus(const std::string& n)
    {
        auto& d = datum(n);
        if (!d.genus)
            d.genus = geometric_genus(data_of(d, n), sheet(n), catalog(), h0_options());
        return *d.genus;
    }

    const CanonicalResult& canonical(const std::string& n)
    {
        auto& d = datum(n);
        if (!d.canonical)
            d.canonical = canonical_on_cover(data_of(d, n), sheet(n), d.chi0);
        return *d.canonical;
    }

    const Handle& handle(const std::string& n) const
    {
        auto it = handles_.find(n);
        if (it == handles_.end())
            invalid("undeclared handle " + n);
        return it->second;
    }

    const CoverClass& handle_class(const std::string& n) const
    {
        const auto& h = handle(n);
        if (!h.cls)
            throw Unavailable{"handle " + n + " unavailable" + (h.broken.empty() ? "" : ": " + h.broken)};
        return *h.cls;
    }

    std::vector<MultiPoly> solve(int degree, const std::vector<SingularityCondition>& conds)
    {
        auto key = condition_key(degree, conds);
        if (cache_.enabled()) {
            if (auto hit = cache_.lookup(key)) {
                try {
                    std::vector<MultiPoly> out;
                    for (const auto& f : *hit)
                        out.push_back(parse_poly(f, plane_vars()));
                    report.cache_hits.push_back(label_);
                    return out;
                } catch (const std::exception& e) {
                    report.warnings.push_back("ignoring corrupt cache entry for " + label_ + ": " + e.what());
                    if (opt_.warn)
                        opt_.warn(report.warnings.back());
                }
            }
        }
        auto out = linear_system(degree, conds);
        if (cache_.enabled()) {
            std::vector<std::string> forms;
            for (const auto& f : out)
                forms.push_back(to_string(f));
            cache_.store(key, forms);
        }
        return out;
    }

    // -- statements ---------------------------------------------------------

    void statement(const Statement& st)
    {
        const auto& s = st.section;
        if (s == "points")
            points(st);
        else if (s == "conditions")
            conditions(st);
        else if (s == "curves")
            curves(st);
        else if (s == "checks")
            checks(st);
        else if (s == "blowups")
            blowups(st);
        else if (s == "catalog")
            catalog_entry(st);
        else if (s == "cover")
            cover_.push_back(&st);
        else if (s == "handles")
            handles(st);
        else if (s == "families")
            families(st);
        else if (s == "audit")
            audit(st);
    }

    void declare(std::set<std::string>& seen, const std::string& n)
    {
        if (n.empty())
            invalid("a name is required");
        if (!seen.insert(n).second)
            invalid("name " + n + " declared twice");
    }

    std::set<std::string> declared_;

    void points(const Statement& st)
    {
        declare(declared_, st.name);
        const auto& w = st.words;
        if ((w.size() == 2 || w.size() == 3) && std::all_of(w.begin(), w.end(), is_rational)) {
            PlanePoint p = w.size() == 2 ? PlanePoint::affine(parse_rational(w[0]), parse_rational(w[1]))
                                         : PlanePoint(parse_rational(w[0]), parse_rational(w[1]), parse_rational(w[2]));
            points_.emplace(st.name, p);
            point_order_.push_back(st.name);
            return;
        }
        for (const auto& n : w)
            point(n);
        point_lists_[st.name] = w;
    }

    void conditions(const Statement& st)
    {
        declare(declared_, st.name);
        conditions_[st.name] = st.rest;
    }

    std::string bracket_points(const std::vector<std::string>& names) const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto& p = point(names[i]);
            if (p.z() != 1)
                invalid("linear-system points must be affine: " + names[i]);
            auto q = [](const Rational& r) {
                return r.get_den() == 1 ? to_string(r) : "\"" + to_string(r) + "\"";
            };
            s += (i ? ",[" : "[") + q(p.x()) + "," + q(p.y()) + "]";
        }
        return s + "]";
    }

    std::vector<SingularityCondition> condition_list(const std::string& pts, const std::string& m, const std::string& t)
    {
        auto names = points_of(pts);
        for (const auto& n : {m, t})
            if (!conditions_.count(n))
                invalid("undeclared condition list " + n);
        try {
            return parse_conditions(bracket_points(names), conditions_.at(m), conditions_.at(t));
        } catch (const std::exception& e) {
            invalid("conditions " + pts + " " + m + " " + t + ": " + e.what());
        }
    }

    void curves(const Statement& st)
    {
        declare(declared_, st.name);
        const auto& n = st.name;
        const auto& w = st.words;
        curves_[n];
        curve_order_.push_back(n);
        auto set = [&](auto fn) {
            std::string broken;
            if (build("curve." + n, broken, [&] { curves_[n] = fn(); }))
                return;
            if (computing())
                curve_broken_[n] = broken;
        };
        if (w[0] == "form") {
            std::string form = st.rest.substr(st.rest.find("form") + 4);
            set([&] { return PlaneCurve::parse(form, n); });
        } else if (w[0] == "line") {
            if (w.size() != 3)
                invalid("expected 'line <point> <point>'");
            auto p = point(w[1]), q = point(w[2]);
            set([&] {
                Rational a = p.y() * q.z() - p.z() * q.y(), b = p.z() * q.x() - p.x() * q.z(),
                         c = p.x() * q.y() - p.y() * q.x();
                const auto& v = plane_vars();
                MultiPoly f = MultiPoly::variable(v, 0) * a + MultiPoly::variable(v, 1) * b +
                              MultiPoly::variable(v, 2) * c;
                return PlaneCurve(covkit::canonical(f), n);
            });
        } else if (w[0] == "union") {
            if (w.size() < 3)
                invalid("a union needs at least two curves");
            for (std::size_t i = 1; i < w.size(); ++i)
                require_curve(w[i]);
            set([&] {
                PlaneCurve u = curve(w[1]);
                for (std::size_t i = 2; i < w.size(); ++i)
                    u = u + curve(w[i]);
                return PlaneCurve(u.form(), n);
            });
        } else if (w[0] == "linsys") {
            if (w.size() != 5)
                invalid("expected 'linsys <degree> <points> <multiplicities> <directions>'");
            int degree = 0;
            try {
                degree = std::stoi(w[1]);
            } catch (const std::exception&) {
                invalid("bad degree " + w[1]);
            }
            auto conds = condition_list(w[2], w[3], w[4]);
            auto sections = std::make_shared<std::vector<MultiPoly>>();
            check("curve." + n + ".sections", Kind::integer, [&]() -> Outcome {
                *sections = solve(degree, conds);
                if (sections->size() == 1)
                    curves_[n] = PlaneCurve(sections->front(), n);
                else
                    curve_broken_[n] = "linear system has " + std::to_string(sections->size()) + " sections";
                return {static_cast<long>(sections->size())};
            });
            if (mode_ == Mode::describe)
                set([&] {
                    auto s = solve(degree, conds);
                    if (s.size() != 1)
                        throw Unavailable{"linear system has " + std::to_string(s.size()) + " sections"};
                    return PlaneCurve(s.front(), n);
                });
            check("curve." + n + ".form", Kind::string, [&]() -> Outcome { return {to_string(curve(n).form())}; });
        } else {
            invalid("unknown curve kind " + w[0]);
        }
    }

    void checks(const Statement& st)
    {
        const auto& w = st.words;
        if (!st.name.empty() || w.empty())
            invalid("expected '<check> <arguments>'");
        const auto& k = w[0];
        auto arity = [&](std::size_t n) {
            if (w.size() != n + 1)
                invalid(k + " takes " + std::to_string(n) + " arguments");
        };
        if (k == "irreducible") {
            for (std::size_t i = 1; i < w.size(); ++i) {
                require_curve(w[i]);
                auto c = w[i];
                check("irreducible." + c, Kind::integer,
                      [&, c]() -> Outcome { return {absolute_factor_count(curve(c))}; });
            }
        } else if (k == "contains") {
            arity(2);
            require_curve(w[1]);
            point(w[2]);
            check("contains." + w[1] + "." + w[2], Kind::boolean,
                  [&]() -> Outcome { return {curve(w[1]).contains(point(w[2]))}; });
        } else if (k == "tangent") {
            arity(3);
            require_curve(w[1]);
            require_curve(w[2]);
            point(w[3]);
            check("tangent." + w[1] + "." + w[2] + "." + w[3], Kind::boolean, [&]() -> Outcome {
                const auto& a = curve(w[1]);
                const auto& b = curve(w[2]);
                const auto& p = point(w[3]);
                if (!a.contains(p) || !b.contains(p))
                    return {false, true, "not through the point"};
                return {intersection_multiplicity(a, b, p) >= 2};
            });
        } else if (k == "multiplicity") {
            arity(2);
            require_curve(w[1]);
            point(w[2]);
            check("multiplicity." + w[1] + "." + w[2], Kind::integer,
                  [&]() -> Outcome { return {multiplicity(curve(w[1]), point(w[2]))}; });
        } else if (k == "blowup") {
            arity(2);
            require_curve(w[1]);
            point(w[2]);
            check("blowup." + w[1] + "." + w[2], Kind::string_list, [&]() -> Outcome {
                auto b = blow_up(curve(w[1]), point(w[2]));
                Json out = Json::array();
                for (const auto& e : b.points) {
                    std::string s = e.rational ? to_string(e.direction) : "root of " + to_string(e.slope_poly);
                    s += " meets " + std::to_string(e.intersection);
                    if (e.multiplicity >= 0)
                        s += " mult " + std::to_string(e.multiplicity);
                    out.push_back(s);
                }
                return {out};
            });
        } else if (k == "tangent_cone") {
            arity(2);
            require_curve(w[1]);
            point(w[2]);
            check("tangent_cone." + w[1] + "." + w[2], Kind::string,
                  [&]() -> Outcome { return {to_string(tangent_cone(curve(w[1]), point(w[2])))}; });
        } else if (k == "classify") {
            arity(2);
            require_curve(w[1]);
            for (const auto& p : points_of(w[2])) {
                auto c = w[1];
                check("classify." + c + "." + p, Kind::string, [&, c, p]() -> Outcome {
                    auto r = classify(curve(c), point(p));
                    std::string s = to_string(r.kind);
                    if (r.kind != SingularityKind::smooth && r.kind != SingularityKind::node)
                        for (const auto& d : r.tangents)
                            s += " " + to_string(d);
                    return {s};
                });
            }
        } else if (k == "singular") {
            arity(1);
            require_curve(w[1]);
            auto locus = std::make_shared<std::optional<SolutionSet>>();
            auto get = [&, locus]() -> const SolutionSet& {
                if (!*locus)
                    *locus = singular_locus(curve(w[1]));
                return **locus;
            };
            check("singular." + w[1], Kind::string_list, [&]() -> Outcome { return {point_names(get().points)}; });
            check("singular." + w[1] + ".extension", Kind::boolean,
                  [&]() -> Outcome { return {!get().components.empty()}; });
        } else if (k == "resolve") {
            arity(2);
            require_curve(w[1]);
            auto pts = points_of(w[2]);
            check("resolve." + w[1], Kind::integer_list, [&, pts]() -> Outcome {
                Json out = Json::array();
                for (const auto& p : pts)
                    out.push_back(resolution_graph(curve(w[1]), point(p)).blowups());
                return {out};
            });
        } else if (k == "intersection") {
            arity(3);
            require_curve(w[1]);
            require_curve(w[2]);
            auto pts = points_of(w[3]);
            check("intersection." + w[1] + "." + w[2], Kind::integer_list, [&, pts]() -> Outcome {
                const auto& a = curve(w[1]);
                const auto& b = curve(w[2]);
                Json out = Json::array();
                long sum = 0;
                for (const auto& p : pts) {
                    int m = intersection_multiplicity(a, b, point(p));
                    sum += m;
                    out.push_back(m);
                }
                long bezout = static_cast<long>(a.degree()) * b.degree();
                return {out, sum == bezout,
                        "sum " + std::to_string(sum) + " against degree product " + std::to_string(bezout)};
            });
        } else if (k == "common") {
            if (w.size() < 3)
                invalid("common takes at least two curves");
            std::vector<std::string> cs(w.begin() + 1, w.end());
            for (const auto& c : cs)
                require_curve(c);
            check("common." + join(cs, "."), Kind::string_list, [&, cs]() -> Outcome {
                std::vector<PlaneCurve> v;
                for (const auto& c : cs)
                    v.push_back(curve(c));
                auto s = common_points(v);
                Json out = point_names(s.points);
                for (const auto& comp : s.components)
                    out.push_back("conjugate points of degree " + std::to_string(comp.degree()));
                return {out};
            });
        } else if (k == "genus") {
            for (std::size_t i = 1; i < w.size(); ++i) {
                require_curve(w[i]);
                auto c = w[i];
                check("genus." + c, Kind::integer, [&, c]() -> Outcome {
                    return {arithmetic_genus(strict_class(curve(c), config()))};
                });
            }
        } else if (k == "pairing") {
            arity(2);
            const auto& a = handle(w[1]);
            const auto& b = handle(w[2]);
            if (a.datum != b.datum)
                invalid("pairing of handles on different covers");
            check("pairing." + w[1] + "." + w[2], Kind::integer,
                  [&]() -> Outcome { return {intersect(handle_class(w[1]), handle_class(w[2]))}; });
        } else {
            invalid("unknown check " + k);
        }
    }

    void blowups(const Statement& st)
    {
        if (config_)
            invalid("blow-ups must precede every class");
        const auto& w = st.words;
        try {
            if (st.name.empty()) {
                if (w.size() != 1)
                    invalid("expected '<point>' or '<name> = <center> <dx> <dy>'");
                building_->add_point(w[0], point(w[0]));
            } else {
                if (w.size() != 3)
                    invalid("expected '<name> = <center> <dx> <dy>'");
                int parent = building_->index(w[0]);
                building_->add_infinitely_near(st.name, parent, Direction{parse_rational(w[1]), parse_rational(w[2])});
            }
        } catch (const ConfigurationError& e) {
            invalid(e.what());
        }
    }

    ConfigPtr config()
    {
        if (!config_)
            config_ = building_;
        return config_;
    }

    int center(const std::string& n)
    {
        try {
            return config()->index(n);
        } catch (const ConfigurationError&) {
            invalid("undeclared center " + n);
        }
    }

    void catalog_entry(const Statement& st)
    {
        declare(catalog_names_, st.name);
        const auto& w = st.words;
        if (!catalog_)
            catalog_.emplace(config());
        if (w[0] == "exceptional") {
            if (w.size() < 2 || (w.size() > 2 && w[2] != "-"))
                invalid("expected 'exceptional <center> [- <center> ...]'");
            int c = center(w[1]);
            std::vector<int> sub;
            for (std::size_t i = 3; i < w.size(); ++i)
                sub.push_back(center(w[i]));
            try {
                catalog_->add_exceptional(st.name, c, sub);
            } catch (const ConfigurationError& e) {
                invalid(e.what());
            }
        } else if (w[0] == "strict") {
            if (w.size() != 2)
                invalid("expected 'strict <curve>'");
            require_curve(w[1]);
            std::string broken;
            if (!build("catalog." + st.name, broken, [&] { catalog_->add_strict(st.name, curve(w[1])); }) &&
                computing()) {
                catalog_ok_ = false;
                catalog_broken_ = broken;
            }
        } else {
            invalid("unknown catalog kind " + w[0]);
        }
    }

    // -- cover --------------------------------------------------------------

    GroupElement element(const std::string& n) const
    {
        GroupElement s = 0;
        std::string rest = n;
        while (!rest.empty()) {
            bool found = false;
            for (std::size_t k = 0; k < generators_.size(); ++k)
                if (rest.rfind(generators_[k], 0) == 0) {
                    s ^= 1u << k;
                    rest = rest.substr(generators_[k].size());
                    found = true;
                    break;
                }
            if (!found)
                invalid("not a group element: " + n);
        }
        return s;
    }

    BranchPiece piece(const std::string& n)
    {
        if (catalog_names_.count(n)) {
            const auto* e = catalog().find(n);
            if (!e)
                throw Unavailable{"catalog entry " + n + " unavailable"};
            return piece_from(*e);
        }
        return strict_piece(n, curve(n), config());
    }

    void require_piece(const std::string& n) const
    {
        if (!catalog_names_.count(n) && !curves_.count(n))
            invalid("undeclared branch piece " + n);
    }

    void finish_cover()
    {
        std::vector<std::pair<GroupElement, std::vector<std::string>>> branch;
        std::vector<std::pair<std::string, std::vector<GroupElement>>> quotients;
        std::string chi0;
        for (const auto* st : cover_) {
            line_ = st->line;
            const auto& w = st->words;
            if (!w.empty() && w[0] == "group") {
                if (!top_.empty())
                    invalid("only one group per scenario");
                top_ = st->name;
                generators_.assign(w.begin() + 1, w.end());
                if (generators_.empty() || generators_.size() > 8)
                    invalid("a group needs between 1 and 8 generators");
            } else if (st->name == "canonical") {
                if (w.size() != 1)
                    invalid("expected 'canonical = <character>'");
                chi0 = w[0];
            } else if (!w.empty() && w[0] == "quotient") {
                std::vector<GroupElement> h;
                for (std::size_t i = 1; i < w.size(); ++i)
                    h.push_back(element(w[i]));
                if (st->name == top_ || st->name.empty())
                    invalid("a quotient needs a new name");
                quotients.emplace_back(st->name, h);
            } else {
                if (top_.empty())
                    invalid("declare the group first");
                for (const auto& p : w)
                    require_piece(p);
                GroupElement s = element(st->name);
                if (s == 0)
                    invalid("the identity has no branch divisor");
                branch.emplace_back(s, w);
            }
        }
        if (top_.empty())
            invalid("the cover section declares no group");
        int r = static_cast<int>(generators_.size());
        datum_order_.push_back(top_);
        auto& Y = datums_[top_];
        if (!chi0.empty()) {
            try {
                Y.chi0 = parse_character(chi0);
            } catch (const std::exception& e) {
                invalid(e.what());
            }
            if (static_cast<int>(chi0.size()) < r || Y.chi0 == 0 || Y.chi0 >= (1u << r) ||
                character_label(Y.chi0, r) != chi0)
                invalid("bad canonical character " + chi0);
            Y.has_canonical = true;
        }
        build("cover." + top_, Y.broken, [&] {
            BuildingData d(config(), generators_);
            for (const auto& [s, names] : branch) {
                std::vector<BranchPiece> ps;
                for (const auto& n : names)
                    ps.push_back(piece(n));
                d.assign(s, ps);
            }
            Y.data = std::move(d);
        });
        for (const auto& [name, h] : quotients) {
            declare(declared_, name);
            datum_order_.push_back(name);
            auto& U = datums_[name];
            U.parent = top_;
            U.subgroup = h;
            if (Y.has_canonical && std::all_of(h.begin(), h.end(), [&](GroupElement s) {
                    return character_value(Y.chi0, s) == 1;
                }))
                U.has_canonical = true;
            build("cover." + name, U.broken, [&] {
                U.data = quotient_datum(data_of(Y, top_), h);
                if (U.has_canonical) {
                    // a character trivial on H, read on lifts of the quotient generators
                    Character c = 0;
                    for (std::size_t k = 0; k < U.data->generators().size(); ++k)
                        if (character_value(Y.chi0, data_of(Y, top_).parse_element(U.data->generators()[k])) == -1)
                            c |= 1u << k;

                    U.chi0 = c;
                }
            });
        }
        cover_checks();
    }

    void cover_checks()
    {
        const std::string& y = top_;
        int r = static_cast<int>(generators_.size());
        unsigned order = 1u << r;
        for (Character chi = 1; chi < order; ++chi) {
            auto l = character_label(chi, r);
            check("sheet." + l, Kind::integer_list, [&, chi]() -> Outcome {
                auto row = sheet(y).L.at(chi).row();
                return {Json(row)};
            });
        }
        auto branch = std::make_shared<std::optional<BranchReport>>();
        auto rep = [&, branch]() -> const BranchReport& {
            if (!*branch)
                *branch = validate_branch(data_of(datum(y), y));
            return **branch;
        };
        check("branch.smooth", Kind::boolean, [&, rep]() -> Outcome {
            const auto& b = rep();
            std::string bad;
            for (const auto& p : b.pieces)
                if (!p.smooth || !p.class_exact)
                    bad += (bad.empty() ? "" : "; ") + p.name + ": " + p.detail;
            return {b.smooth, b.smooth, bad};
        });
        check("branch.disjoint", Kind::boolean, [&, rep]() -> Outcome {
            const auto& b = rep();
            std::string bad;
            for (const auto& p : b.pairs)
                if (!p.disjoint())
                    bad += (bad.empty() ? "" : "; ") + p.a + "." + p.b;
            return {b.disjoint, b.disjoint, bad};
        });
        invariants(y, r);
        for (const auto& n : datum_order_)
            if (n != y)
                invariants(n, r - rank_of_subgroup(datum(n).subgroup));
    }

    static int rank_of_subgroup(const std::vector<GroupElement>& h)
    {
        std::vector<GroupElement> basis;
        for (auto s : h) {
            for (auto b : basis)
                s = std::min(s, s ^ b);
            if (s)
                basis.push_back(s);
        }
        return static_cast<int>(basis.size());
    }

    void invariants(const std::string& n, int rank)
    {
        check("euler." + n, Kind::integer,
              [&, n]() -> Outcome { return {euler_characteristic(data_of(datum(n), n), sheet(n)).chi}; });
        check("euler." + n + ".terms", Kind::integer_list,
              [&, n]() -> Outcome { return {Json(euler_characteristic(data_of(datum(n), n), sheet(n)).terms)}; });
        if (n == top_)
            for (Character chi = 1; chi < (1u << rank); ++chi) {
                auto l = character_label(chi, rank);
                auto at = [&, n, chi]() -> const H0Result& { return genus(n).h0.at(chi); };
                check("h0." + l, Kind::integer, [at]() -> Outcome { return {at().dimension}; });
                check("h0." + l + ".fixed", Kind::string, [at]() -> Outcome {
                    const auto& f = at().fixed;
                    return {f.is_zero() ? std::string("0") : to_symbolic(f)};
                });
                check("h0." + l + ".moving", Kind::string, [at]() -> Outcome {
                    const auto& m = at().moving;
                    return {m.is_zero() ? std::string("0") : to_symbolic(m)};
                });
                check("h0." + l + ".sections", Kind::string_list, [at]() -> Outcome {
                    Json out = Json::array();
                    for (const auto& s : at().sections)
                        out.push_back(to_string(s));
                    return {out};
                });
            }
        check("pg." + n, Kind::integer, [&, n]() -> Outcome { return {genus(n).pg}; });
        check("q." + n, Kind::integer, [&, n]() -> Outcome {
            auto q = genus(n).q;
            return {q, q >= 0, q >= 0 ? "" : "negative irregularity"};
        });
        if (datum(n).has_canonical)
            check("K2." + n, Kind::integer, [&, n]() -> Outcome { return {canonical(n).K2}; });
    }

    // -- handles, families, audit -------------------------------------------

    void handles(const Statement& st)
    {
        declare(declared_, st.name);
        const auto& w = st.words;
        if (w.size() < 3 || (w[0] != "half" && w[0] != "pullback"))
            invalid("expected '<half|pullback> <cover> <pieces...>'");
        datum(w[1]);
        Handle h;
        h.datum = w[1];
        h.half = w[0] == "half";
        h.parts.assign(w.begin() + 2, w.end());
        for (const auto& p : h.parts)
            if (h.half)
                require_piece(p);
            else if (!catalog_names_.count(p))
                require_curve(p);
        build("handle." + st.name, h.broken, [&] {
            auto& d = datum(h.datum);
            const auto& data = data_of(d, h.datum);
            if (h.half) {
                h.cls = half_pullback(h.parts, data);
                return;
            }
            auto D = DivisorClass::zero(config());
            for (const auto& p : h.parts)
                D += catalog_names_.count(p) ? piece(p).cls : strict_class(curve(p), config());
            h.cls = pullback(D, data);
        });
        handles_[st.name] = std::move(h);
    }

    void families(const Statement& st)
    {
        const auto& w = st.words;
        if (w.size() != 3 || w[1] != "x")
            invalid("expected '<handle> = <count> x <self-intersection>'");
        const auto& h = handle(st.name);
        long count = 0, self = 0;
        try {
            count = std::stol(w[0]);
            self = std::stol(w[2]);
        } catch (const std::exception&) {
            invalid("bad family numbers");
        }
        if (count <= 0 || self >= 0)
            invalid("a family needs a positive count of negative curves");
        auto name = st.name;
        check("family." + name, Kind::integer, [&, name, count, self]() -> Outcome {
            const auto& hd = handle(name);
            auto& d = datum(hd.datum);
            CurveFamily f{name, hd.half ? hd.parts : std::vector<std::string>{}, handle_class(name), count, self};
            const CoverClass* K = d.has_canonical ? &canonical(hd.datum).K : nullptr;
            validate_family(f, K);
            d.families.push_back(f);
            return {count};
        });
        (void)h;
    }

    std::vector<CurveFamily> exceptional_families(const std::string& n)
    {
        std::vector<CurveFamily> out;
        for (const auto& f : datum(n).families)
            if (f.self_intersection == -1)
                out.push_back(f);
        return out;
    }

    bool declares_exceptional(const std::string& n) const
    {
        bool any = false;
        for (const auto& st : sc_.statements)
            if (st.section == "families" && handles_.count(st.name) && handles_.at(st.name).datum == n &&
                st.words.size() == 3 && st.words[2] == "-1")
                any = true;
        return any;
    }

    void finish_families()
    {
        for (const auto& n : datum_order_) {
            auto& d = datum(n);
            if (!d.has_canonical || !declares_exceptional(n))
                continue;
            if (n == top_) {
                if (assumed_.count("nef-pullback"))
                    assume_nef();
                check("K2." + n + ".minimal", Kind::integer, [&, n]() -> Outcome {
                    if (!assumed_.count("nef-pullback") || handle(assumed_.at("nef-pullback")).datum != n)
                        throw Unavailable{"requires assumption nef-pullback"};
                    require_assumed("nef-pullback");
                    return {minimal_model(canonical(n), exceptional_families(n)).K2};
                });
            } else {
                check("K2." + n + ".contracted", Kind::integer,
                      [&, n]() -> Outcome { return {minimal_model(canonical(n), exceptional_families(n)).K2}; });
            }
        }
        for (const auto& n : datum_order_) {
            if (datum(n).parent.empty() || !datum(n).has_canonical)
                continue;
            if (assumed_.count("isolated-fixed-points") && assumed_.at("isolated-fixed-points") == n)
                assume_isolated(n);
            check("K2." + n + ".canonical", Kind::integer, [&, n]() -> Outcome {
                if (!assumed_.count("isolated-fixed-points") || assumed_.at("isolated-fixed-points") != n)
                    throw Unavailable{"requires assumption isolated-fixed-points"};
                require_assumed("isolated-fixed-points");
                const auto* top = report.find("K2." + datum(n).parent + ".minimal");
                if (!top || top->status != Status::pass)
                    throw Unavailable{"minimal model of " + datum(n).parent + " unavailable"};
                long k = top->computed.get<long>();
                long index = order_ratio(n);
                std::string detail;
                bool ok = k % index == 0;
                if (const auto* c = report.find("K2." + n + ".contracted"); c && c->status == Status::pass) {
                    ok = ok && c->computed.get<long>() == k / index;
                    detail = "contracted model gives " + c->computed.dump();
                }
                return {k / index, ok, detail};
            });
        }
    }

    long order_ratio(const std::string& n)
    {
        auto& d = datum(n);
        auto& top = datum(d.parent);
        return static_cast<long>(data_of(top, d.parent).order() / data_of(d, n).order());
    }

    void require_assumed(const std::string& key) const
    {
        const auto* r = report.find("assume." + key);
        if (!r || r->status != Status::assumed)
            throw Unavailable{"assumption " + key + " does not hold"};
    }

    void assume_nef()
    {
        assumption("nef-pullback", [&]() -> Outcome {
            const auto& name = assumed_.at("nef-pullback");
            const auto& h = handle(name);
            Json v = Json::object();
            v["handle"] = name;
            bool ok = !h.half && h.parts.size() == 1 && curves_.count(h.parts[0]);
            std::string detail;
            if (ok) {
                v["curve"] = h.parts[0];
                int factors = absolute_factor_count(curve(h.parts[0]));
                long self = intersect(handle_class(name), handle_class(name));
                v["absolutely_irreducible"] = factors == 1;
                v["self_intersection"] = self;
                ok = factors == 1 && self == 0;
                if (!ok)
                    detail = "needs an absolutely irreducible curve with self-intersection 0";
            } else {
                detail = "needs the pullback of a single plane curve";
            }
            return {v, ok, detail};
        });
    }

    void assume_isolated(const std::string& n)
    {
        assumption("isolated-fixed-points", [&, n]() -> Outcome {
            Json v = Json::object();
            v["cover"] = n;
            Json h = Json::array();
            const auto& top = data_of(datum(datum(n).parent), datum(n).parent);
            for (auto s : datum(n).subgroup)
                h.push_back(top.element_name(s));
            v["subgroup"] = h;
            return {v};
        });
    }

    void audit(const Statement& st)
    {
        const auto& n = st.name;
        auto& d = datum(n);
        if (d.parent.empty())
            invalid("the audit runs on a quotient cover");
        std::vector<std::string> cs = st.words;
        for (const auto& c : cs)
            require_curve(c);
        auto result = std::make_shared<std::optional<AuditReport>>();
        auto get = [&, n, cs, result]() -> const AuditReport& {
            if (!*result) {
                std::vector<PlaneCurve> expected;
                for (const auto& c : cs)
                    expected.push_back(curve(c));
                *result = base_point_audit(data_of(datum(n), n), genus(n), catalog(), exceptional_families(n), expected);
            }
            return **result;
        };
        check("audit." + n + ".generators", Kind::integer, [get]() -> Outcome {
            const auto& a = get();
            return {static_cast<long>(a.generators.size()), a.count_ok};
        });
        check("audit." + n + ".images", Kind::boolean,
              [get]() -> Outcome { return {get().images_ok, get().images_ok}; });
        check("audit." + n + ".common", Kind::string_list, [&, get]() -> Outcome {
            const auto& a = get();
            Json out = point_names(a.common.points);
            for (const auto& comp : a.common.components)
                out.push_back("conjugate points of degree " + std::to_string(comp.degree()));
            return {out, a.common_ok};
        });
        check("audit." + n + ".resolution", Kind::integer_list, [get]() -> Outcome {
            const auto& a = get();
            Json out = Json::array();
            std::string detail;
            for (const auto& [used, allowed] : a.blowups) {
                out.push_back(used);
                detail += (detail.empty() ? "allowed " : ", ") + std::to_string(allowed);
            }
            return {out, a.resolution_ok, detail};
        });
        check("audit." + n + ".families", Kind::boolean,
              [get]() -> Outcome { return {get().families_ok, get().families_ok}; });
        check("audit." + n + ".base_point_free", Kind::boolean, [get]() -> Outcome {
            const auto& a = get();
            return {a.base_point_free(), a.base_point_free(), join(a.failures, "; ")};
        });
        ledger(n);
    }

    void ledger(const std::string& n)
    {
        const std::string parent = datum(n).parent;
        auto passed = [&](const std::string& c) -> const CheckRecord& {
            const auto* r = report.find(c);
            if (!r || r->status != Status::pass)
                throw Unavailable{"requires " + c};
            return *r;
        };
        check("degree." + n, Kind::integer, [&, n, passed]() -> Outcome {
            passed("audit." + n + ".base_point_free");
            long pg = passed("pg." + n).computed.get<long>();
            if (pg != 3)
                return {0, false, "the canonical image is not the plane"};
            // base-point free onto the plane: degree = K^2 of the canonical model
            return {passed("K2." + n + ".canonical").computed.get<long>()};
        });
        check("degree." + parent, Kind::integer, [&, n, parent, passed]() -> Outcome {
            long base = passed("degree." + n).computed.get<long>();
            long pgY = passed("pg." + parent).computed.get<long>();
            long pgU = passed("pg." + n).computed.get<long>();
            long factor = order_ratio(n);
            if (pgY != pgU)
                return {0, false, "the canonical map does not factor through " + n};
            report.ledger = DegreeLedger{n, parent, base, factor, factor * base};
            return {factor * base, true, std::to_string(factor) + " x " + std::to_string(base)};
        });
    }

    void finish(const std::string& section)
    {
        if (section == "cover") {
            finish_cover();
            cover_.clear();
        } else if (section == "families") {
            finish_families();
        }
    }
};

std::string Runner::describe() const
{
    std::ostringstream out;
    out << "scenario " << sc_.name << "\n\npoints\n";
    for (const auto& n : point_order_)
        out << "  " << n << " = " << to_string(points_.at(n)) << "\n";
    out << "\ncurves\n";
    for (const auto& n : curve_order_) {
        const auto& c = curves_.at(n);
        if (c)
            out << "  " << n << " (degree " << c->degree() << ") = " << to_string(c->form()) << "\n";
        else
            out << "  " << n << " unavailable: " << (curve_broken_.count(n) ? curve_broken_.at(n) : "") << "\n";
    }
    if (config_) {
        out << "\ncenters\n";
        for (std::size_t i = 0; i < config_->size(); ++i) {
            const auto& c = (*config_)[i];
            out << "  " << c.name;
            if (c.point)
                out << " at " << to_string(*c.point);
            else
                out << " near " << (*config_)[static_cast<std::size_t>(c.parent)].name << " along "
                    << to_string(c.direction);
            out << "\n";
        }
    }
    if (catalog_) {
        out << "\ncatalog\n";
        for (const auto& e : catalog_->entries())
            out << "  " << e.name << " = " << to_symbolic(e.cls) << "  (self-intersection "
                << intersect(e.cls, e.cls) << ")\n";
    }
    for (const auto& n : datum_order_) {
        const auto& d = datums_.at(n);
        if (!d.data) {
            out << "\ncover " << n << " unavailable: " << d.broken << "\n";
            continue;
        }
        out << "\ncover " << n << " over generators " << join(d.data->generators(), " ") << "\n";
        for (auto s : d.data->support()) {
            std::vector<std::string> ps;
            for (const auto& p : d.data->pieces(s))
                ps.push_back(p.name);
            out << "  D_" << d.data->element_name(s) << " = " << join(ps, " + ") << " = "
                << to_symbolic(d.data->branch_class(s)) << "\n";
        }
    }
    return out.str();
}

} // namespace

VerificationReport run_scenario(const Scenario& scenario, const RunOptions& options)
{
    clear_ops();
    note(Op::run_scenario);
    {
        Runner dry(scenario, options, Runner::Mode::dry);
        dry.run();
    }
    Runner r(scenario, options, Runner::Mode::run);
    r.run();
    if (!options.timings)
        for (auto& c : r.report.checks)
            c.elapsed_ms = 0;
    r.report.operations = recorded_ops();
    return std::move(r.report);
}

std::vector<std::pair<std::string, std::string>> plan_scenario(const Scenario& scenario)
{
    Runner dry(scenario, {}, Runner::Mode::dry);
    dry.run();
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [n, k] : dry.plan)
        out.emplace_back(n, kind_name(k));
    return out;
}

std::string describe_scenario(const Scenario& scenario, const RunOptions& options)
{
    {
        Runner dry(scenario, options, Runner::Mode::dry);
        dry.run();
    }
    Runner r(scenario, options, Runner::Mode::describe);
    r.run();
    return r.describe();
}

} // namespace covkit
