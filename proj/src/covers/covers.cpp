#include "covkit/covers.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/linalg.hpp"

#include <algorithm>
#include <bit>
#include <functional>

namespace covkit {

int character_value(Character chi, GroupElement sigma) { return std::popcount(chi & sigma) % 2 ? -1 : 1; }

std::string character_label(Character chi, int rank)
{
    std::string s;
    for (int k = 0; k < rank; ++k)
        s += (chi >> k) & 1u ? "-1" : "1";
    return s;
}

Character parse_character(const std::string& label)
{
    Character chi = 0;
    int k = 0;
    for (std::size_t i = 0; i < label.size(); ++i, ++k) {
        if (label[i] == '-') {
            if (i + 1 >= label.size() || label[i + 1] != '1')
                throw ParseError("bad character label " + label);
            chi |= 1u << k;
            ++i;
        } else if (label[i] != '1') {
            throw ParseError("bad character label " + label);
        }
    }
    return chi;
}

BranchPiece piece_from(const CatalogEntry& e)
{
    BranchPiece p;
    p.name = e.name;
    p.cls = e.cls;
    p.curve = e.curve;
    p.center = e.center;
    p.subtracted = e.subtracted;
    return p;
}

BranchPiece strict_piece(std::string name, const PlaneCurve& c, const ConfigPtr& config)
{
    BranchPiece p;
    p.name = std::move(name);
    p.cls = strict_class(c, config);
    p.curve = c;
    p.reduced = is_squarefree(c);
    return p;
}

BuildingData::BuildingData(ConfigPtr config, std::vector<std::string> generators)
    : config_(std::move(config)), generators_(std::move(generators))
{
    if (generators_.size() > 16)
        throw InvalidBuildingData("group rank above 16");
}

std::string BuildingData::element_name(GroupElement sigma) const
{
    if (sigma == 0)
        return "e";
    std::string s;
    for (std::size_t k = 0; k < generators_.size(); ++k)
        if ((sigma >> k) & 1u)
            s += generators_[k];
    return s;
}

GroupElement BuildingData::parse_element(const std::string& name) const
{
    if (name == "e")
        return 0;
    GroupElement sigma = 0;
    std::size_t i = 0;
    while (i < name.size()) {
        bool found = false;
        for (std::size_t k = 0; k < generators_.size() && !found; ++k)
            if (name.compare(i, generators_[k].size(), generators_[k]) == 0) {
                sigma ^= 1u << k;
                i += generators_[k].size();
                found = true;
            }
        if (!found)
            throw ParseError("unknown group element " + name);
    }
    return sigma;
}

void BuildingData::assign(GroupElement sigma, std::vector<BranchPiece> pieces)
{
    if (sigma == 0 || sigma >= order())
        throw InvalidBuildingData("branch divisor for an invalid element");
    for (const auto& p : pieces) {
        if (!p.reduced)
            throw InvalidBuildingData("branch piece " + p.name + " is not reduced");
        if (p.cls.config() != config_)
            throw InvalidBuildingData("branch piece " + p.name + " lives on another configuration");
        for (const auto& [s, list] : branch_)
            for (const auto& q : list)
                if (q.name == p.name)
                    throw InvalidBuildingData("piece " + p.name + " is shared by two branch divisors");
    }
    auto& slot = branch_[sigma];
    slot.insert(slot.end(), pieces.begin(), pieces.end());
}

const std::vector<BranchPiece>& BuildingData::pieces(GroupElement sigma) const
{
    static const std::vector<BranchPiece> none;
    auto it = branch_.find(sigma);
    return it == branch_.end() ? none : it->second;
}

DivisorClass BuildingData::branch_class(GroupElement sigma) const
{
    DivisorClass d = DivisorClass::zero(config_);
    for (const auto& p : pieces(sigma))
        d += p.cls;
    return d;
}

std::vector<GroupElement> BuildingData::support() const
{
    std::vector<GroupElement> out;
    for (const auto& [s, list] : branch_)
        if (!list.empty())
            out.push_back(s);
    return out;
}

const BranchPiece* BuildingData::find_piece(const std::string& name) const
{
    for (const auto& [s, list] : branch_)
        for (const auto& p : list)
            if (p.name == name)
                return &p;
    return nullptr;
}

GroupElement BuildingData::owner(const std::string& piece) const
{
    for (const auto& [s, list] : branch_)
        for (const auto& p : list)
            if (p.name == piece)
                return s;
    throw InvalidBuildingData(piece + " is not a branch piece");
}

bool BuildingData::generates() const
{
    // span over F_2 of the support
    std::vector<GroupElement> basis;
    for (auto s : support()) {
        for (auto b : basis)
            s = std::min(s, s ^ b);
        if (s)
            basis.push_back(s);
    }
    return static_cast<int>(basis.size()) == rank();
}

CharacterSheet solve_character_sheet(const BuildingData& data)
{
    note(Op::solve_character_sheet);
    CharacterSheet sheet;
    sheet.rank = data.rank();
    sheet.L.push_back(DivisorClass::zero(data.config()));
    for (Character chi = 1; chi < data.order(); ++chi) {
        DivisorClass sum = DivisorClass::zero(data.config());
        for (auto s : data.support())
            if (character_value(chi, s) == -1)
                sum += data.branch_class(s);
        try {
            sheet.L.push_back(halve(sum));
        } catch (const NotTwoDivisibleError&) {
            throw InvalidBuildingData("branch sum " + to_string(sum) + " for character " +
                                      character_label(chi, data.rank()) + " is not divisible by 2");
        }
    }
    return sheet;
}

namespace {

// Every center of multiplicity >= 2 in the resolution tree must be a
// configured center.
bool singular_centers_configured(const ResolutionGraph& g, const BlowupConfiguration& cfg, int root, std::string& why)
{
    std::function<bool(std::size_t, int)> walk = [&](std::size_t node, int center) {
        const auto& n = g.nodes[node];
        if (n.multiplicity >= 2 && center < 0) {
            why = "singular infinitely near point " + n.center + " is not blown up";
            return false;
        }
        for (auto c : n.children) {
            int next = -1;
            if (center >= 0)
                for (auto k : cfg.children(static_cast<std::size_t>(center)))
                    if (g.nodes[c].direction.dx != 0 || g.nodes[c].direction.dy != 0)
                        if (cfg[static_cast<std::size_t>(k)].direction == g.nodes[c].direction)
                            next = k;
            if (!walk(c, next))
                return false;
        }
        return true;
    };
    return walk(0, root);
}

PieceCheck check_piece(const BranchPiece& p, const ConfigPtr& config)
{
    PieceCheck out;
    out.name = p.name;
    const auto& cfg = *config;
    if (!p.curve) {
        DivisorClass expect = DivisorClass::exceptional(config, static_cast<std::size_t>(p.center));
        for (auto s : p.subtracted)
            expect -= DivisorClass::exceptional(config, static_cast<std::size_t>(s));
        out.class_exact = expect == p.cls;
        auto kids = cfg.children(static_cast<std::size_t>(p.center));
        out.smooth = kids.size() == p.subtracted.size();
        if (!out.smooth)
            out.detail = "not the strict transform of an exceptional curve";
        return out;
    }
    const PlaneCurve& c = *p.curve;
    out.class_exact = strict_class(c, config) == p.cls;
    if (!is_squarefree(c)) {
        out.smooth = false;
        out.detail = "not reduced";
        return out;
    }
    SolutionSet sing = singular_locus(c);
    if (!sing.components.empty()) {
        out.smooth = false;
        out.detail = "singular points over an extension field";
        return out;
    }
    for (const auto& q : sing.points) {
        int root = -1;
        for (std::size_t i = 0; i < cfg.size(); ++i)
            if (cfg[i].point && *cfg[i].point == q)
                root = static_cast<int>(i);
        if (root < 0) {
            out.smooth = false;
            out.detail = "singular at " + to_string(q) + ", which is not a center";
            return out;
        }
        if (!singular_centers_configured(resolution_graph(c, q), cfg, root, out.detail)) {
            out.smooth = false;
            return out;
        }
    }
    return out;
}

} // namespace

BranchReport validate_branch(const BuildingData& data)
{
    note(Op::validate_branch);
    BranchReport out;
    std::vector<const BranchPiece*> all;
    for (auto s : data.support())
        for (const auto& p : data.pieces(s))
            all.push_back(&p);
    const auto& cfg = *data.config();
    for (const auto* p : all) {
        auto chk = check_piece(*p, data.config());
        if (!chk.class_exact)
            throw IntegrityError("class of branch piece " + p->name + " does not match its witness");
        out.smooth = out.smooth && chk.smooth;
        out.pieces.push_back(std::move(chk));
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            PairCheck pc;
            pc.a = all[i]->name;
            pc.b = all[j]->name;
            pc.pairing = intersect(all[i]->cls, all[j]->cls);
            if (all[i]->curve && all[j]->curve) {
                const auto &c = *all[i]->curve, &d = *all[j]->curve;
                pc.audited = true;
                pc.degree_product = static_cast<long>(c.degree()) * d.degree();
                for (std::size_t k = 0; k < cfg.size(); ++k)
                    if (cfg[k].point)
                        pc.at_centers += intersection_multiplicity(c, d, *cfg[k].point);
            }
            out.disjoint = out.disjoint && pc.disjoint();
            out.pairs.push_back(std::move(pc));
        }
    return out;
}

EulerResult euler_characteristic(const BuildingData& data, const CharacterSheet& sheet)
{
    note(Op::euler_characteristic);
    EulerResult out;
    out.terms.push_back(static_cast<long>(data.order()));
    out.chi = out.terms[0];
    DivisorClass K = canonical_class(data.config());
    for (Character chi = 1; chi < data.order(); ++chi) {
        const auto& L = sheet.L.at(chi);
        long t = intersect(L, L) + intersect(K, L);
        if (t % 2 != 0)
            throw LatticeIntegrityError("L^2 + K.L is odd");
        out.terms.push_back(t / 2);
        out.chi += t / 2;
    }
    return out;
}

GenusResult geometric_genus(const BuildingData& data, const CharacterSheet& sheet, const NegativeCurveCatalog& catalog,
                            const H0Options& options)
{
    note(Op::geometric_genus);
    GenusResult out;
    out.h0.emplace_back();
    DivisorClass K = canonical_class(data.config());
    for (Character chi = 1; chi < data.order(); ++chi) {
        auto r = h0(K + sheet.L.at(chi), catalog, options);
        if (!r.computable)
            throw UnsupportedError("h0 for character " + character_label(chi, data.rank()) + ": " + r.note);
        out.pg += r.dimension;
        out.h0.push_back(std::move(r));
    }
    out.q = out.pg + 1 - euler_characteristic(data, sheet).chi;
    return out;
}

BuildingData quotient_datum(const BuildingData& data, const std::vector<GroupElement>& h)
{
    note(Op::quotient_datum);
    int r = data.rank();
    std::vector<GroupElement> basis;
    auto reduce = [&](GroupElement s) {
        for (auto b : basis)
            s = std::min(s, s ^ b);
        return s;
    };
    for (auto s : h) {
        if (s >= data.order())
            throw SubgroupError("element outside the group");
        if (auto t = reduce(s))
            basis.push_back(t);
    }
    std::size_t hdim = basis.size();
    std::vector<int> complement;
    for (int k = 0; k < r; ++k)
        if (auto t = reduce(1u << k)) {
            basis.push_back(t);
            complement.push_back(k);
        }
    // coordinates of every element in the adapted basis
    std::vector<unsigned> coords(data.order());
    for (unsigned m = 0; m < data.order(); ++m) {
        GroupElement s = 0;
        for (int i = 0; i < r; ++i)
            if ((m >> i) & 1u)
                s ^= basis[static_cast<std::size_t>(i)];
        coords[s] = m;
    }
    std::vector<std::string> names;
    for (int k : complement)
        names.push_back(data.generators()[static_cast<std::size_t>(k)]);
    BuildingData out(data.config(), names);
    for (auto s : data.support()) {
        GroupElement t = coords[s] >> hdim;
        if (t != 0)
            out.assign(t, data.pieces(s));
    }
    return out;
}

CoverClass& CoverClass::operator+=(const CoverClass& o)
{
    if (rank != o.rank)
        throw IntegrityError("pullbacks to different covers");
    twice += o.twice;
    return *this;
}

CoverClass operator*(long k, CoverClass a)
{
    a.twice = k * a.twice;
    return a;
}

CoverClass pullback(const DivisorClass& D, const BuildingData& data) { note(Op::pullback); return {data.rank(), 2 * D}; }

CoverClass half_pullback(const std::vector<std::string>& pieces, const BuildingData& data)
{
    note(Op::pullback);
    DivisorClass sum = DivisorClass::zero(data.config());
    for (const auto& n : pieces) {
        const auto* p = data.find_piece(n);
        if (!p)
            throw InvalidBuildingData("half-pullback of " + n + ", which is not a branch piece");
        sum += p->cls;
    }
    return {data.rank(), sum};
}

CoverClass half_pullback(const DivisorClass& D, const BuildingData& data)
{
    note(Op::pullback);
    std::vector<const BranchPiece*> all;
    for (auto s : data.support())
        for (const auto& p : data.pieces(s))
            all.push_back(&p);
    std::size_t n = D.multiplicities().size() + 1;
    Matrix m(n, all.size() + 1);
    for (std::size_t j = 0; j < all.size(); ++j) {
        m(0, j) = Rational(all[j]->cls.degree());
        for (std::size_t i = 1; i < n; ++i)
            m(i, j) = Rational(all[j]->cls[i - 1]);
    }
    m(0, all.size()) = Rational(D.degree());
    for (std::size_t i = 1; i < n; ++i)
        m(i, all.size()) = Rational(D[i - 1]);
    auto piv = rref(m);
    if (!piv.empty() && piv.back() == all.size())
        throw InvalidBuildingData(to_symbolic(D) + " is not supported on the branch locus");
    for (std::size_t r = 0; r < piv.size(); ++r)
        if (m(r, all.size()).get_den() != 1)
            throw InvalidBuildingData(to_symbolic(D) + " is not an integral combination of branch pieces");
    return {data.rank(), D};
}

long intersect(const CoverClass& a, const CoverClass& b)
{
    if (a.rank != b.rank)
        throw IntegrityError("pullbacks to different covers");
    long n = (1L << a.rank) * intersect(a.twice, b.twice);
    if (n % 4 != 0)
        throw IntegrityError("intersection number on the cover is not an integer");
    return n / 4;
}

CanonicalResult canonical_on_cover(const BuildingData& data, const CharacterSheet& sheet, Character chi0)
{
    note(Op::canonical_on_cover);
    if (chi0 == 0 || chi0 >= data.order())
        throw InvalidBuildingData("character " + std::to_string(chi0) + " is not a nontrivial character");
    CanonicalResult out;
    out.chi0 = chi0;
    DivisorClass xi = DivisorClass::zero(data.config());
    for (auto s : data.support())
        if (character_value(chi0, s) == 1)
            xi += data.branch_class(s);
    out.xi = {data.rank(), xi};
    out.K = out.xi + pullback(canonical_class(data.config()) + sheet.L.at(chi0), data);
    out.K2 = intersect(out.K, out.K);
    return out;
}

CurveFamily make_family(std::string name, const std::vector<std::string>& pieces, const BuildingData& data,
                        long count, long self_intersection)
{
    return {std::move(name), pieces, half_pullback(pieces, data), count, self_intersection};
}

void validate_family(const CurveFamily& f, const CoverClass* K)
{
    long sq = intersect(f.cls, f.cls);
    if (f.count * f.self_intersection != sq)
        throw LedgerError(f.name + ": " + std::to_string(f.count) + " curves of self-intersection " +
                          std::to_string(f.self_intersection) + " against class square " + std::to_string(sq));
    if (K) {
        long k = intersect(*K, f.cls);
        if (k != f.count * (-2 - f.self_intersection))
            throw LedgerError(f.name + ": canonical degree " + std::to_string(k) + " does not fit " +
                              std::to_string(f.count) + " smooth rational curves");
    }
}

MinimalModelLedger minimal_model(const CanonicalResult& canonical, const std::vector<CurveFamily>& families)
{
    note(Op::minimal_model);
    MinimalModelLedger out;
    out.start_K2 = canonical.K2;
    out.K2 = canonical.K2;
    for (const auto& f : families) {
        if (f.self_intersection != -1)
            throw LedgerError(f.name + " is not a family of (-1)-curves");
        validate_family(f, &canonical.K);
        out.K2 += f.count;
        out.families.push_back(f);
    }
    return out;
}

PlaneCurve CanonicalGenerator::image_curve() const
{
    if (image.empty())
        throw IntegrityError("canonical divisor for " + std::to_string(chi) + " has no plane image");
    PlaneCurve c = image[0];
    for (std::size_t i = 1; i < image.size(); ++i)
        c = c + image[i];
    return c;
}

namespace {

CanonicalGenerator generator_for(const BuildingData& data, Character chi, const H0Result& h,
                                 const std::vector<CurveFamily>& contracted, const NegativeCurveCatalog& catalog)
{
    CanonicalGenerator g;
    g.chi = chi;
    std::vector<const BranchPiece*> all;
    for (auto s : data.support())
        for (const auto& p : data.pieces(s)) {
            all.push_back(&p);
            g.coefficients[p.name] = character_value(chi, s) == 1 ? 1 : 0;
        }
    // a fixed component that is a branch piece pulls back to twice its half
    for (const auto& removed : h.removed) {
        const CatalogEntry* e = catalog.find(removed);
        if (!e)
            throw IntegrityError("fixed component " + removed + " is not in the catalog");
        auto match = std::find_if(all.begin(), all.end(), [&](const BranchPiece* p) { return p->cls == e->cls; });
        if (match != all.end())
            g.coefficients[(*match)->name] += 2;
        else if (e->curve)
            g.image.push_back(*e->curve);
    }
    for (const auto* p : all) {
        if (!p->curve || g.coefficients[p->name] == 0)
            continue;
        bool dropped = false;
        for (const auto& f : contracted) {
            if (std::find(f.pieces.begin(), f.pieces.end(), p->name) == f.pieces.end())
                continue;
            dropped = std::all_of(f.pieces.begin(), f.pieces.end(),
                                  [&](const std::string& n) { return g.coefficients[n] == 1; });
        }
        if (!dropped)
            g.image.push_back(*p->curve);
    }
    if (h.dimension == 1 && h.moving.degree() > 0)
        g.image.emplace_back(h.sections.at(0));
    return g;
}

} // namespace

AuditReport base_point_audit(const BuildingData& data, const GenusResult& genus, const NegativeCurveCatalog& catalog,
                             const std::vector<CurveFamily>& contracted, const std::vector<PlaneCurve>& expected)
{
    note(Op::base_point_audit);
    AuditReport out;
    const auto& cfg = *data.config();
    for (Character chi = 1; chi < data.order(); ++chi) {
        const auto& h = genus.h0.at(chi);
        if (h.dimension > 1)
            throw UnsupportedError("character " + character_label(chi, data.rank()) +
                                   " contributes a pencil; the audit expects one divisor per character");
        if (h.dimension == 1)
            out.generators.push_back(generator_for(data, chi, h, contracted, catalog));
    }

    out.count_ok = static_cast<long>(out.generators.size()) == genus.pg &&
                   static_cast<long>(expected.size()) == genus.pg;
    if (!out.count_ok)
        out.failures.push_back(std::to_string(expected.size()) + " plane curves for a canonical system of dimension " +
                               std::to_string(genus.pg) +
                               ": fewer curves than sections leave an excess intersection on the canonical model");

    std::vector<MultiPoly> derived, given;
    for (const auto& g : out.generators)
        derived.push_back(canonical(g.image_curve().form()));
    for (const auto& c : expected)
        given.push_back(canonical(c.form()));
    out.images_ok = derived.size() == given.size() && std::is_permutation(derived.begin(), derived.end(), given.begin());
    if (!out.images_ok)
        out.failures.push_back("plane images of the canonical divisors differ from the given curves");

    std::vector<PlanePoint> roots;
    for (const auto& c : cfg.centers())
        if (c.point)
            roots.push_back(*c.point);
    std::sort(roots.begin(), roots.end());
    if (expected.size() >= 2) {
        out.common = common_points(expected);
        auto found = out.common.points;
        std::sort(found.begin(), found.end());
        out.common_ok = out.common.components.empty() && found == roots;
    }
    if (!out.common_ok)
        out.failures.push_back("common points of the plane curves are not exactly the blown-up points");

    // total union of the distinct components
    std::vector<PlaneCurve> parts;
    for (const auto& g : out.generators)
        for (const auto& c : g.image)
            if (std::none_of(parts.begin(), parts.end(),
                             [&](const PlaneCurve& d) { return canonical(d.form()) == canonical(c.form()); }))
                parts.push_back(c);
    out.resolution_ok = !parts.empty();
    if (!parts.empty()) {
        PlaneCurve total = parts[0];
        for (std::size_t i = 1; i < parts.size(); ++i)
            total = total + parts[i];
        for (std::size_t i = 0; i < cfg.size(); ++i) {
            if (!cfg[i].point)
                continue;
            int allowed = 0;
            for (std::size_t k = 0; k < cfg.size(); ++k)
                if (cfg.root_point(k) == *cfg[i].point)
                    ++allowed;
            int used = total.contains(*cfg[i].point) ? resolution_graph(total, *cfg[i].point).blowups() : 0;
            out.blowups.emplace_back(used, allowed);
            out.resolution_ok = out.resolution_ok && used <= allowed;
        }
    }
    if (!out.resolution_ok)
        out.failures.push_back("the union of the plane curves needs more blow-ups than the configuration has");

    out.families_ok = true;
    for (const auto& f : contracted) {
        bool once = std::any_of(out.generators.begin(), out.generators.end(), [&](const CanonicalGenerator& g) {
            return std::all_of(f.pieces.begin(), f.pieces.end(),
                               [&](const std::string& n) { return g.coefficients.at(n) == 1; });
        });
        out.families.emplace_back(f.name, once);
        out.families_ok = out.families_ok && once;
        if (!once)
            out.failures.push_back("no canonical divisor contains " + f.name + " with multiplicity one");
    }
    return out;
}

} // namespace covkit
