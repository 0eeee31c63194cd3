#include "covkit/curves.hpp"

#include "covkit/errors.hpp"
#include "covkit/trace.hpp"
#include "covkit/resultant.hpp"
#include "germ.hpp"

#include <sstream>

namespace covkit {

int ResolutionGraph::blowups() const
{
    int n = 0;
    for (const auto& node : nodes)
        if (node.created >= 0)
            ++n;
    return n;
}

std::vector<std::vector<int>> ResolutionGraph::multiplicity_sequences() const
{
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    auto walk = [&](auto&& self, std::size_t i) -> void {
        const auto& node = nodes[i];
        if (node.created < 0) {
            out.push_back(path);
            return;
        }
        path.push_back(node.multiplicity);
        for (auto c : node.children)
            self(self, c);
        path.pop_back();
    };
    if (!nodes.empty())
        walk(walk, 0);
    return out;
}

std::string to_string(const ResolutionGraph& g)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i];
        os << i << " " << n.center << " m=" << n.multiplicity;
        if (n.orbit > 1)
            os << " orbit=" << n.orbit;
        os << " E={";
        for (std::size_t k = 0; k < n.exceptionals.size(); ++k)
            os << (k ? "," : "") << n.exceptionals[k];
        os << "}";
        if (n.created >= 0)
            os << " blowup->E" << n.created;
        os << "\n";
    }
    return os.str();
}

namespace {

struct ExcGerm {
    int id;
    MultiPoly line;
};

class Resolver {
public:
    Resolver(ResolutionGraph& g, int bound) : g_(g), bound_(bound) {}

    std::size_t visit(const MultiPoly& germ, const std::vector<ExcGerm>& exc, const std::string& label)
    {
        std::size_t index = g_.nodes.size();
        g_.nodes.emplace_back();
        int m = germ.order();
        {
            auto& node = g_.nodes[index];
            node.center = label;
            node.multiplicity = m;
            for (const auto& e : exc)
                node.exceptionals.push_back(e.id);
        }
        if (resolved(germ, exc, m))
            return index;
        if (++blowups_ > bound_)
            throw UnsupportedError("resolution exceeded " + std::to_string(bound_) + " blow-ups");
        int id = next_id_++;
        g_.nodes[index].created = id;
        MultiPoly exc_line = MultiPoly::variable(local_vars(), 0);
        for (const auto& f : detail::cone_factors(germ.lowest_part())) {
            std::size_t child;
            if (!f.rational) {
                if (f.exponent > 1)
                    throw UnsupportedError("infinitely near point of multiplicity " + std::to_string(f.exponent) +
                                           " over a number field at " + label);
                // smooth and transverse to the new exceptional curve only
                child = g_.nodes.size();
                g_.nodes.emplace_back();
                auto& leaf = g_.nodes[child];
                leaf.center = label + ".{" + to_string(f.slope_poly, "s") + "}";
                leaf.multiplicity = 1;
                leaf.exceptionals = {id};
                leaf.orbit = f.slope_poly.degree();
            } else {
                std::vector<ExcGerm> next{{id, exc_line}};
                for (const auto& e : exc)
                    if (detail::line_direction(e.line) == f.direction)
                        next.push_back({e.id, detail::blow_up_germ(e.line, f.direction, 1)});
                child = visit(detail::blow_up_germ(germ, f.direction, m), next,
                              label + "." + to_string(f.direction.normalized()));
                g_.nodes[child].direction = f.direction.normalized();
            }
            g_.nodes[index].children.push_back(child);
        }
        return index;
    }

private:
    static bool resolved(const MultiPoly& germ, const std::vector<ExcGerm>& exc, int m)
    {
        if (m == 0)
            return true;
        if (m > 1 || exc.size() > 1)
            return false;
        if (exc.empty())
            return true;
        return !(detail::line_direction(germ.lowest_part()) == detail::line_direction(exc[0].line));
    }

    ResolutionGraph& g_;
    int bound_;
    int blowups_ = 0;
    int next_id_ = 0;
};

void check_reduced_at(const PlaneCurve& c, const PlanePoint& p)
{
    if (is_squarefree(c))
        return;
    const MultiPoly& F = c.form();
    MultiPoly g = F;
    for (std::size_t i = 0; i < 3; ++i)
        g = gcd(g, F.derivative(i));
    if (!g.is_constant() && g.evaluate(p.coords()) == 0)
        throw NonReducedError("repeated component " + to_string(g) + " through " + to_string(p));
}

} // namespace

ResolutionGraph resolution_graph(const PlaneCurve& c, const PlanePoint& p)
{
    note(Op::resolution_graph);
    MultiPoly germ = local_germ(c.form(), p);
    if (germ.order() == 0)
        throw NotOnCurveError(to_string(p) + " is not on the curve");
    check_reduced_at(c, p);
    ResolutionGraph g;
    int d = c.degree();
    // each blow-up of a reduced curve lowers the delta invariant
    Resolver r(g, d * (d - 1) / 2 + d + 1);
    r.visit(germ, {}, to_string(p));
    return g;
}

std::string to_string(SingularityKind k)
{
    switch (k) {
    case SingularityKind::smooth:
        return "smooth";
    case SingularityKind::node:
        return "node";
    case SingularityKind::tacnode:
        return "tacnode";
    case SingularityKind::ordinary_triple:
        return "ordinary_triple";
    case SingularityKind::other:
        break;
    }
    return "other";
}

Classification classify(const PlaneCurve& c, const PlanePoint& p)
{
    note(Op::classify);
    Classification out;
    out.graph = resolution_graph(c, p);
    MultiPoly cone = local_germ(c.form(), p).lowest_part();
    auto factors = detail::cone_factors(cone);
    bool reduced_cone = true;
    for (const auto& f : factors) {
        reduced_cone = reduced_cone && f.exponent == 1;
        if (f.rational)
            out.tangents.push_back(f.direction.normalized());
    }
    const auto& g = out.graph;
    int m = g.nodes[0].multiplicity;
    if (m == 1)
        out.kind = SingularityKind::smooth;
    else if (m == 2 && reduced_cone && g.blowups() == 1)
        out.kind = SingularityKind::node;
    else if (m == 3 && reduced_cone && g.blowups() == 1)
        out.kind = SingularityKind::ordinary_triple;
    else if (m == 2 && factors.size() == 1 && factors[0].rational && g.blowups() == 2) {
        const auto& second = g.nodes[g.nodes[0].children.at(0)];
        int branches = 0;
        bool leaves = true;
        for (auto i : second.children) {
            branches += g.nodes[i].orbit;
            leaves = leaves && g.nodes[i].created < 0 && g.nodes[i].multiplicity == 1;
        }
        if (second.multiplicity == 2 && branches == 2 && leaves)
            out.kind = SingularityKind::tacnode;
    }
    return out;
}

} // namespace covkit
