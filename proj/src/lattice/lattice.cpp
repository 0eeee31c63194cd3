#include "covkit/lattice.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"

#include <algorithm>
#include <sstream>

namespace covkit {

int BlowupConfiguration::add_point(std::string name, const PlanePoint& p)
{
    if (index(name) >= 0)
        throw ConfigurationError("duplicate center " + name);
    for (const auto& c : centers_)
        if (c.point && *c.point == p)
            throw ConfigurationError("point " + to_string(p) + " is already a center");
    centers_.push_back({std::move(name), p, -1, {0, 0}});
    return static_cast<int>(centers_.size()) - 1;
}

int BlowupConfiguration::add_infinitely_near(std::string name, int parent, const Direction& d)
{
    if (index(name) >= 0)
        throw ConfigurationError("duplicate center " + name);
    if (parent < 0 || parent >= static_cast<int>(centers_.size()))
        throw ConfigurationError("center " + name + " must follow its parent");
    if (d.dx == 0 && d.dy == 0)
        throw ConfigurationError("center " + name + " needs a direction");
    for (auto c : children(static_cast<std::size_t>(parent)))
        if (centers_[static_cast<std::size_t>(c)].direction == d)
            throw ConfigurationError("center " + name + " repeats a direction");
    centers_.push_back({std::move(name), std::nullopt, parent, d});
    return static_cast<int>(centers_.size()) - 1;
}

int BlowupConfiguration::index(const std::string& name) const
{
    for (std::size_t i = 0; i < centers_.size(); ++i)
        if (centers_[i].name == name)
            return static_cast<int>(i);
    return -1;
}

const PlanePoint& BlowupConfiguration::root_point(std::size_t i) const
{
    while (centers_[i].parent >= 0)
        i = static_cast<std::size_t>(centers_[i].parent);
    return *centers_[i].point;
}

std::vector<Direction> BlowupConfiguration::path(std::size_t i) const
{
    std::vector<Direction> out;
    while (centers_[i].parent >= 0) {
        out.push_back(centers_[i].direction);
        i = static_cast<std::size_t>(centers_[i].parent);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<int> BlowupConfiguration::children(std::size_t i) const
{
    std::vector<int> out;
    for (std::size_t j = 0; j < centers_.size(); ++j)
        if (centers_[j].parent == static_cast<int>(i))
            out.push_back(static_cast<int>(j));
    return out;
}

DivisorClass::DivisorClass(ConfigPtr config, long degree, std::vector<long> a)
    : config_(std::move(config)), d_(degree), a_(std::move(a))
{
    if (!config_ || a_.size() != config_->size())
        throw ConfigurationError("class has " + std::to_string(a_.size()) + " exceptional coefficients for " +
                                 std::to_string(config_ ? config_->size() : 0) + " centers");
}

DivisorClass DivisorClass::zero(ConfigPtr config)
{
    std::size_t n = config->size();
    return DivisorClass(std::move(config), 0, std::vector<long>(n, 0));
}

DivisorClass DivisorClass::hyperplane(ConfigPtr config)
{
    std::size_t n = config->size();
    return DivisorClass(std::move(config), 1, std::vector<long>(n, 0));
}

DivisorClass DivisorClass::exceptional(ConfigPtr config, std::size_t i)
{
    std::vector<long> a(config->size(), 0);
    a.at(i) = -1;
    return DivisorClass(std::move(config), 0, std::move(a));
}

DivisorClass DivisorClass::from_row(ConfigPtr config, const std::vector<long>& row)
{
    if (row.empty())
        throw ConfigurationError("empty class row");
    std::vector<long> a;
    for (std::size_t i = 1; i < row.size(); ++i)
        a.push_back(-row[i]);
    return DivisorClass(std::move(config), row[0], std::move(a));
}

std::vector<long> DivisorClass::row() const
{
    std::vector<long> r{d_};
    for (auto v : a_)
        r.push_back(-v);
    return r;
}

bool DivisorClass::is_zero() const
{
    return d_ == 0 && std::all_of(a_.begin(), a_.end(), [](long v) { return v == 0; });
}

void DivisorClass::check_same(const DivisorClass& o) const
{
    if (config_ != o.config_ && (!config_ || !o.config_ || config_->size() != o.config_->size()))
        throw ConfigurationError("classes live on different configurations");
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o)
{
    check_same(o);
    d_ += o.d_;
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] += o.a_[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o)
{
    check_same(o);
    d_ -= o.d_;
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] -= o.a_[i];
    return *this;
}

DivisorClass operator*(long k, DivisorClass a)
{
    a.d_ *= k;
    for (auto& v : a.a_)
        v *= k;
    return a;
}

std::string to_string(const DivisorClass& D)
{
    std::ostringstream os;
    os << "(" << D.degree() << ";";
    for (std::size_t i = 0; i < D.multiplicities().size(); ++i)
        os << (i ? ", " : " ") << D[i];
    os << ")";
    return os.str();
}

namespace {

std::string basis_name(const Center& c)
{
    if (!c.name.empty() && c.name[0] == 'p')
        return "E" + c.name.substr(1);
    return "E[" + c.name + "]";
}

} // namespace

std::string to_symbolic(const DivisorClass& D)
{
    std::ostringstream os;
    bool first = true;
    auto put = [&](long coeff, const std::string& name) {
        if (coeff == 0)
            return;
        if (first)
            os << (coeff < 0 ? "-" : "");
        else
            os << (coeff < 0 ? " - " : " + ");
        long m = coeff < 0 ? -coeff : coeff;
        if (m != 1)
            os << m;
        os << name;
        first = false;
    };
    put(D.degree(), "T");
    for (std::size_t i = 0; i < D.multiplicities().size(); ++i)
        put(-D[i], basis_name((*D.config())[i]));
    if (first)
        os << "0";
    return os.str();
}

long intersect(const DivisorClass& a, const DivisorClass& b)
{
    note(Op::intersect);
    if (a.config() != b.config() && a.multiplicities().size() != b.multiplicities().size())
        throw ConfigurationError("classes live on different configurations");
    long s = a.degree() * b.degree();
    for (std::size_t i = 0; i < a.multiplicities().size(); ++i)
        s -= a[i] * b[i];
    return s;
}

DivisorClass canonical_class(const ConfigPtr& config)
{
    note(Op::canonical_class);
    return DivisorClass(config, -3, std::vector<long>(config->size(), -1));
}

long arithmetic_genus(const DivisorClass& D)
{
    note(Op::arithmetic_genus);
    long t = intersect(D, D) + intersect(canonical_class(D.config()), D);
    if (t % 2 != 0)
        throw LatticeIntegrityError("D^2 + K.D is odd for " + to_string(D));
    return t / 2 + 1;
}

DivisorClass strict_class(const PlaneCurve& c, const ConfigPtr& config)
{
    note(Op::strict_class);
    const auto& cfg = *config;
    std::vector<long> a(cfg.size(), 0);
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        auto dirs = cfg.path(i);
        auto seq = multiplicity_sequence(c, cfg.root_point(i), dirs);
        a[i] = seq.back();
    }
    return DivisorClass(config, c.degree(), std::move(a));
}

DivisorClass halve(const DivisorClass& D)
{
    note(Op::halve);
    if (D.degree() % 2 != 0)
        throw NotTwoDivisibleError("degree of " + to_string(D) + " is odd");
    std::vector<long> a;
    for (auto v : D.multiplicities()) {
        if (v % 2 != 0)
            throw NotTwoDivisibleError(to_string(D) + " has an odd coefficient");
        a.push_back(v / 2);
    }
    return DivisorClass(D.config(), D.degree() / 2, std::move(a));
}

bool is_realizable(const DivisorClass& D)
{
    const auto& cfg = *D.config();
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (D[i] < 0)
            return false;
        if (cfg[i].parent >= 0 && D[i] > D[static_cast<std::size_t>(cfg[i].parent)])
            return false;
    }
    return true;
}

std::vector<SingularityCondition> conditions_of(const DivisorClass& D)
{
    const auto& cfg = *D.config();
    std::vector<SingularityCondition> out;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (!cfg.children(i).empty())
            continue;
        // one condition per leaf: the chain of centers from its root
        std::vector<std::size_t> chain{i};
        while (cfg[chain.back()].parent >= 0)
            chain.push_back(static_cast<std::size_t>(cfg[chain.back()].parent));
        std::reverse(chain.begin(), chain.end());
        std::vector<int> m;
        for (auto k : chain)
            m.push_back(static_cast<int>(D[k]));
        while (!m.empty() && m.back() == 0)
            m.pop_back();
        if (m.empty())
            continue;
        auto dirs = cfg.path(i);
        dirs.resize(m.size() - 1);
        out.push_back({cfg.root_point(i), m, dirs});
    }
    return out;
}

const CatalogEntry& NegativeCurveCatalog::push(CatalogEntry e)
{
    if (find(e.name))
        throw ConfigurationError("duplicate catalog entry " + e.name);
    long self = intersect(e.cls, e.cls);
    if (self >= 0)
        throw ConfigurationError("catalog entry " + e.name + " has self-intersection " + std::to_string(self));
    entries_.push_back(std::move(e));
    return entries_.back();
}

const CatalogEntry& NegativeCurveCatalog::add_exceptional(std::string name, int center, std::vector<int> subtracted)
{
    const auto& cfg = *config_;
    if (center < 0 || center >= static_cast<int>(cfg.size()))
        throw ConfigurationError("unknown center for " + name);
    auto kids = cfg.children(static_cast<std::size_t>(center));
    DivisorClass cls = DivisorClass::exceptional(config_, static_cast<std::size_t>(center));
    for (int s : subtracted) {
        if (std::find(kids.begin(), kids.end(), s) == kids.end())
            throw ConfigurationError(name + ": center " + std::to_string(s) + " is not infinitely near to " +
                                     cfg[static_cast<std::size_t>(center)].name);
        cls -= DivisorClass::exceptional(config_, static_cast<std::size_t>(s));
    }
    if (subtracted.size() != kids.size())
        throw ConfigurationError(name + " is not the strict transform of an exceptional curve");
    CatalogEntry e{std::move(name), cls, CatalogEntry::Kind::exceptional, center, std::move(subtracted), std::nullopt};
    return push(std::move(e));
}

const CatalogEntry& NegativeCurveCatalog::add_strict(std::string name, const PlaneCurve& c)
{
    if (absolute_factor_count(c) != 1)
        throw ConfigurationError(name + " is not an irreducible curve");
    CatalogEntry e{std::move(name), strict_class(c, config_), CatalogEntry::Kind::strict, -1, {}, c};
    return push(std::move(e));
}

const CatalogEntry* NegativeCurveCatalog::find(const std::string& name) const
{
    for (const auto& e : entries_)
        if (e.name == name)
            return &e;
    return nullptr;
}

// Each removed entry is an irreducible curve meeting the residual class
// negatively, hence a fixed component.
H0Result h0(const DivisorClass& D, const NegativeCurveCatalog& catalog, const H0Options& options)
{
    note(Op::h0);
    H0Result out;
    out.fixed = DivisorClass::zero(D.config());
    DivisorClass cur = D;
    for (int step = 0;; ++step) {
        if (cur.degree() < 0) {
            out.moving = cur;
            out.dimension = 0;
            out.note = "negative degree";
            return out;
        }
        if (step > options.reduction_bound)
            throw ReductionBoundError("fixed-part reduction of " + to_string(D) + " exceeded " +
                                      std::to_string(options.reduction_bound) + " steps");
        const CatalogEntry* hit = nullptr;
        for (const auto& e : catalog.entries())
            if (intersect(e.cls, cur) < 0) {
                hit = &e;
                break;
            }
        if (!hit)
            break;
        cur -= hit->cls;
        out.fixed += hit->cls;
        out.removed.push_back(hit->name);
    }
    out.moving = cur;
    if (!is_realizable(cur)) {
        out.computable = false;
        out.note = "residual class " + to_string(cur) + " is not given by point conditions";
        return out;
    }
    auto conds = conditions_of(cur);
    int d = static_cast<int>(cur.degree());
    out.sections = options.solver ? options.solver(d, conds) : linear_system(d, conds);
    out.dimension = static_cast<int>(out.sections.size());
    return out;
}

} // namespace covkit
